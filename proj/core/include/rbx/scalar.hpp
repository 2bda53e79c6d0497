#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>

namespace rbx {

/// Exact rational scalar.
///
/// Always stored in lowest terms with a positive denominator; zero is 0/1.
/// Scalars are the coefficients of every element type in the library and
/// also carry the weight of a Rota-Baxter structure.
class Scalar {
public:
    Scalar() : v_(0) {}
    Scalar(long n) : v_(n) {} // NOLINT: implicit by design, 2 * x reads naturally
    Scalar(long num, long den);
    explicit Scalar(mpq_class v);

    /// Accepts "p" or "p/q" with arbitrary-precision digits. Throws DomainError.
    static Scalar from_string(const std::string& text);

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }
    bool is_integer() const { return v_.get_den() == 1; }

    Scalar operator-() const;
    Scalar abs() const;
    Scalar reciprocal() const; // DomainError on zero

    Scalar& operator+=(const Scalar& rhs);
    Scalar& operator-=(const Scalar& rhs);
    Scalar& operator*=(const Scalar& rhs);
    Scalar& operator/=(const Scalar& rhs); // DomainError on zero divisor

    friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
    friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
    friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
    friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

    /// "p" when the denominator is 1, else "p/q".
    std::string str() const;
    /// Always "p/q", including "0/1"; used in CLI header lines.
    std::string str_ratio() const;

    friend std::ostream& operator<<(std::ostream& os, const Scalar& s);

private:
    mpq_class v_;
};

} // namespace rbx
