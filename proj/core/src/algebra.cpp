#include "rbx/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace rbx {

// ---------------------------------------------------------------------------
// UnivariatePoly

UnivariatePoly::UnivariatePoly(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) {
    trim();
}

UnivariatePoly UnivariatePoly::monomial(int degree, Scalar coeff) {
    if (coeff.is_zero())
        return UnivariatePoly();
    std::vector<Scalar> c(static_cast<std::size_t>(degree) + 1, Scalar(0));
    c.back() = std::move(coeff);
    return UnivariatePoly(std::move(c));
}

void UnivariatePoly::trim() {
    while (!c_.empty() && c_.back().is_zero())
        c_.pop_back();
}

Scalar UnivariatePoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size()))
        return Scalar(0);
    return c_[static_cast<std::size_t>(i)];
}

bool UnivariatePoly::is_monic() const {
    return !c_.empty() && c_.back().is_one();
}

UnivariatePoly UnivariatePoly::monic() const {
    if (is_zero())
        throw DomainError("cannot normalize the zero polynomial");
    return scaled(c_.back().reciprocal());
}

UnivariatePoly UnivariatePoly::operator+(const UnivariatePoly& rhs) const {
    std::vector<Scalar> c(std::max(c_.size(), rhs.c_.size()), Scalar(0));
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = coeff(static_cast<int>(i)) + rhs.coeff(static_cast<int>(i));
    return UnivariatePoly(std::move(c));
}

UnivariatePoly UnivariatePoly::operator*(const UnivariatePoly& rhs) const {
    if (is_zero() || rhs.is_zero())
        return UnivariatePoly();
    std::vector<Scalar> c(c_.size() + rhs.c_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < rhs.c_.size(); ++j)
            c[i + j] += c_[i] * rhs.c_[j];
    return UnivariatePoly(std::move(c));
}

UnivariatePoly UnivariatePoly::scaled(const Scalar& s) const {
    if (s.is_zero())
        return UnivariatePoly();
    std::vector<Scalar> c(c_);
    for (auto& x : c)
        x *= s;
    return UnivariatePoly(std::move(c));
}

UnivariatePoly UnivariatePoly::pow(int k) const {
    if (k < 0)
        throw DomainError("negative polynomial power");
    UnivariatePoly r = monomial(0, 1);
    for (int i = 0; i < k; ++i)
        r = r * *this;
    return r;
}

std::pair<UnivariatePoly, UnivariatePoly> UnivariatePoly::divmod_monic(const UnivariatePoly& divisor) const {
    if (!divisor.is_monic() || divisor.degree() < 1)
        throw DomainError("divisor must be monic and nonconstant");
    UnivariatePoly rem = *this;
    const int d = divisor.degree();
    if (rem.degree() < d)
        return {UnivariatePoly(), rem};
    std::vector<Scalar> q(static_cast<std::size_t>(rem.degree() - d) + 1, Scalar(0));
    while (rem.degree() >= d) {
        const int shift = rem.degree() - d;
        const Scalar lead = rem.c_.back();
        q[static_cast<std::size_t>(shift)] = lead;
        rem = rem + (divisor * monomial(shift, lead)).scaled(Scalar(-1));
    }
    return {UnivariatePoly(std::move(q)), rem};
}

// ---------------------------------------------------------------------------
// AlgebraDescriptor

namespace {

bool valid_var_name(const std::string& name) {
    if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0])))
        return false;
    for (char ch : name)
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_')
            return false;
    // P, T and s are reserved by the expression grammar.
    return name != "P" && name != "T" && name != "s";
}

void check_variables(const std::vector<std::string>& vars) {
    std::set<std::string> seen;
    for (const auto& v : vars) {
        if (!valid_var_name(v))
            throw DomainError("invalid variable name: '" + v + "'");
        if (!seen.insert(v).second)
            throw DomainError("duplicate variable name: '" + v + "'");
    }
}

} // namespace

AlgebraDescriptor::AlgebraDescriptor(std::vector<std::string> variables) : vars_(std::move(variables)) {
    check_variables(vars_);
}

AlgebraDescriptor::AlgebraDescriptor(std::vector<std::string> variables, int denom_var, UnivariatePoly s)
    : vars_(std::move(variables)) {
    check_variables(vars_);
    if (denom_var < 0 || denom_var >= static_cast<int>(vars_.size()))
        throw DomainError("denominator variable index out of range");
    if (s.degree() < 1)
        throw DomainError("denominator polynomial must be nonconstant");
    denom_ = Denominator{denom_var, s.monic()};
}

int AlgebraDescriptor::var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name)
            return static_cast<int>(i);
    return -1;
}

int AlgebraDescriptor::denom_var() const {
    if (!denom_)
        throw DomainError("descriptor has no denominator");
    return denom_->variable;
}

const UnivariatePoly& AlgebraDescriptor::denom_poly() const {
    if (!denom_)
        throw DomainError("descriptor has no denominator");
    return denom_->s;
}

int AlgebraDescriptor::denom_degree() const {
    return denom_poly().degree();
}

bool AlgebraDescriptor::denominator_is_variable() const {
    if (!denom_)
        return false;
    const auto& c = denom_->s.coeffs();
    return c.size() == 2 && c[0].is_zero() && c[1].is_one();
}

// ---------------------------------------------------------------------------
// BasisKey / AlgebraElement

bool BasisKey::is_unit() const {
    if (denom_power != 0)
        return false;
    return std::all_of(exponents.begin(), exponents.end(), [](std::int32_t e) { return e == 0; });
}

void validate_key(const AlgebraDescriptor& alg, const BasisKey& key) {
    if (key.exponents.size() != alg.var_count())
        throw DomainError("basis key arity does not match descriptor");
    for (std::int32_t e : key.exponents)
        if (e < 0)
            throw DomainError("negative exponent in basis key");
    if (key.denom_power < 0)
        throw DomainError("negative denominator power in basis key");
    if (key.denom_power > 0) {
        if (!alg.has_denominator())
            throw DomainError("fractional key in a descriptor without denominator");
        if (key.exponents[static_cast<std::size_t>(alg.denom_var())] >= alg.denom_degree())
            throw DomainError("fractional key not in s-adic canonical form");
    }
}

AlgebraElement AlgebraElement::one(const AlgebraDescriptor& alg) {
    return constant(alg, Scalar(1));
}

AlgebraElement AlgebraElement::constant(const AlgebraDescriptor& alg, const Scalar& c) {
    AlgebraElement e(alg);
    e.add_term(BasisKey::unit(alg.var_count()), c);
    return e;
}

AlgebraElement AlgebraElement::variable(const AlgebraDescriptor& alg, int index) {
    if (index < 0 || index >= static_cast<int>(alg.var_count()))
        throw DomainError("variable index out of range");
    BasisKey key = BasisKey::unit(alg.var_count());
    key.exponents[static_cast<std::size_t>(index)] = 1;
    return monomial(alg, std::move(key));
}

AlgebraElement AlgebraElement::monomial(const AlgebraDescriptor& alg, BasisKey key, const Scalar& c) {
    validate_key(alg, key);
    AlgebraElement e(alg);
    e.add_term(key, c);
    return e;
}

AlgebraElement AlgebraElement::s_inverse_power(const AlgebraDescriptor& alg, int k) {
    if (k < 1)
        throw DomainError("s-inverse power requires k >= 1");
    BasisKey key = BasisKey::unit(alg.var_count());
    key.denom_power = k;
    return monomial(alg, std::move(key));
}

AlgebraElement AlgebraElement::s_polynomial(const AlgebraDescriptor& alg) {
    const UnivariatePoly& s = alg.denom_poly();
    AlgebraElement e(alg);
    for (int i = 0; i <= s.degree(); ++i) {
        if (s.coeff(i).is_zero())
            continue;
        BasisKey key = BasisKey::unit(alg.var_count());
        key.exponents[static_cast<std::size_t>(alg.denom_var())] = i;
        e.add_term(key, s.coeff(i));
    }
    return e;
}

bool AlgebraElement::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first.is_unit() && terms_.begin()->second.is_one();
}

void AlgebraElement::add_term(const BasisKey& key, const Scalar& c) {
    if (c.is_zero())
        return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero())
        terms_.erase(it);
}

AlgebraElement AlgebraElement::operator-() const {
    AlgebraElement r(alg_);
    for (const auto& [k, c] : terms_)
        r.terms_.emplace(k, -c);
    return r;
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& rhs) const {
    if (alg_ != rhs.alg_)
        throw DomainError("descriptor mismatch in addition");
    AlgebraElement r = *this;
    for (const auto& [k, c] : rhs.terms_)
        r.add_term(k, c);
    return r;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& rhs) const {
    return *this + (-rhs);
}

AlgebraElement AlgebraElement::scaled(const Scalar& c) const {
    AlgebraElement r(alg_);
    if (c.is_zero())
        return r;
    for (const auto& [k, coeff] : terms_)
        r.terms_.emplace(k, coeff * c);
    return r;
}

namespace {

// Adds coeff * (x^num_deg / s^k) * (monomial in the other variables given by
// exps with the denominator slot ignored) to out, in canonical form. The
// s-adic expansion of x^num_deg splits the fraction into its polynomial part
// and V-basis terms with numerator degree below deg s.
void add_canonical_fraction(AlgebraElement& out, const AlgebraDescriptor& alg,
                            std::vector<std::int32_t> exps, int num_deg, int k, const Scalar& coeff) {
    const std::size_t dv = static_cast<std::size_t>(alg.denom_var());
    const UnivariatePoly& s = alg.denom_poly();

    // s-adic digits of x^num_deg: x^num_deg = sum_i digit[i] * s^i, deg digit[i] < deg s.
    std::vector<UnivariatePoly> digits;
    UnivariatePoly u = UnivariatePoly::monomial(num_deg, 1);
    while (!u.is_zero()) {
        auto [q, r] = u.divmod_monic(s);
        digits.push_back(r);
        u = std::move(q);
    }

    for (std::size_t i = 0; i < digits.size(); ++i) {
        const UnivariatePoly& digit = digits[i];
        if (digit.is_zero())
            continue;
        const int level = static_cast<int>(i) - k;
        if (level >= 0) {
            // Polynomial contribution digit * s^level, expanded into monomials.
            const UnivariatePoly p = digit * s.pow(level);
            for (int d = 0; d <= p.degree(); ++d) {
                if (p.coeff(d).is_zero())
                    continue;
                BasisKey key{exps, 0};
                key.exponents[dv] = d;
                out.add_term(key, coeff * p.coeff(d));
            }
        } else {
            // V-basis contribution digit / s^(-level).
            for (int d = 0; d <= digit.degree(); ++d) {
                if (digit.coeff(d).is_zero())
                    continue;
                BasisKey key{exps, -level};
                key.exponents[dv] = d;
                out.add_term(key, coeff * digit.coeff(d));
            }
        }
    }
}

} // namespace

AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) {
    if (a.descriptor() != b.descriptor())
        throw DomainError("descriptor mismatch in multiplication");
    const AlgebraDescriptor& alg = a.descriptor();
    AlgebraElement out(alg);
    for (const auto& [ka, ca] : a.terms()) {
        for (const auto& [kb, cb] : b.terms()) {
            std::vector<std::int32_t> exps(alg.var_count());
            for (std::size_t i = 0; i < exps.size(); ++i)
                exps[i] = ka.exponents[i] + kb.exponents[i];
            const Scalar c = ca * cb;
            const int k = ka.denom_power + kb.denom_power;
            if (k == 0) {
                out.add_term(BasisKey{std::move(exps), 0}, c);
            } else {
                const std::size_t dv = static_cast<std::size_t>(alg.denom_var());
                const int num_deg = exps[dv];
                exps[dv] = 0;
                add_canonical_fraction(out, alg, std::move(exps), num_deg, k, c);
            }
        }
    }
    return out;
}

AlgebraElement pow(const AlgebraElement& a, int k) {
    if (k < 0)
        throw DomainError("negative element power");
    AlgebraElement r = AlgebraElement::one(a.descriptor());
    for (int i = 0; i < k; ++i)
        r = mul(r, a);
    return r;
}

std::pair<AlgebraElement, AlgebraElement> split(const AlgebraElement& a) {
    if (!a.descriptor().has_denominator())
        throw DomainError("split requires a descriptor with denominator");
    AlgebraElement poly(a.descriptor());
    AlgebraElement frac(a.descriptor());
    for (const auto& [k, c] : a.terms()) {
        if (k.is_polynomial())
            poly.add_term(k, c);
        else
            frac.add_term(k, c);
    }
    return {std::move(poly), std::move(frac)};
}

} // namespace rbx
