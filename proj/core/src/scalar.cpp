#include "rbx/scalar.hpp"

#include "rbx/errors.hpp"

#include <ostream>

namespace rbx {

Scalar::Scalar(long num, long den) {
    if (den == 0)
        throw DomainError("scalar denominator must be nonzero");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Scalar::Scalar(mpq_class v) : v_(std::move(v)) {
    v_.canonicalize();
}

Scalar Scalar::from_string(const std::string& text) {
    mpq_class v;
    if (v.set_str(text, 10) != 0)
        throw DomainError("invalid rational literal: '" + text + "'");
    if (v.get_den() == 0)
        throw DomainError("rational literal with zero denominator: '" + text + "'");
    v.canonicalize();
    return Scalar(std::move(v));
}

Scalar Scalar::operator-() const {
    Scalar r;
    r.v_ = -v_;
    return r;
}

Scalar Scalar::abs() const {
    Scalar r;
    r.v_ = ::abs(v_);
    return r;
}

Scalar Scalar::reciprocal() const {
    if (is_zero())
        throw DomainError("reciprocal of zero");
    Scalar r;
    r.v_ = 1 / v_;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
    v_ += rhs.v_;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
    v_ -= rhs.v_;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
    v_ *= rhs.v_;
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
    if (rhs.is_zero())
        throw DomainError("division by zero scalar");
    v_ /= rhs.v_;
    return *this;
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
    const int c = cmp(a.v_, b.v_);
    if (c < 0)
        return std::strong_ordering::less;
    if (c > 0)
        return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Scalar::str() const {
    if (v_.get_den() == 1)
        return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Scalar::str_ratio() const {
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
    return os << s.str();
}

} // namespace rbx
