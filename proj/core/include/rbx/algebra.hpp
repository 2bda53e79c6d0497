#pragma once

#include "rbx/errors.hpp"
#include "rbx/scalar.hpp"

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rbx {

/// Dense univariate polynomial over Q. Used for the denominator polynomial s
/// and the s-adic expansions behind fraction canonicalization.
class UnivariatePoly {
public:
    UnivariatePoly() = default; // zero polynomial
    explicit UnivariatePoly(std::vector<Scalar> coeffs); // coeffs[i] is the t^i coefficient
    static UnivariatePoly monomial(int degree, Scalar coeff = 1);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    Scalar coeff(int i) const;
    const std::vector<Scalar>& coeffs() const { return c_; }
    bool is_monic() const;
    /// Normalizes by the leading coefficient. DomainError on zero.
    UnivariatePoly monic() const;

    UnivariatePoly operator+(const UnivariatePoly& rhs) const;
    UnivariatePoly operator*(const UnivariatePoly& rhs) const;
    UnivariatePoly scaled(const Scalar& c) const;
    UnivariatePoly pow(int k) const;

    /// Quotient and remainder; the divisor must be monic and nonconstant.
    std::pair<UnivariatePoly, UnivariatePoly> divmod_monic(const UnivariatePoly& divisor) const;

    friend bool operator==(const UnivariatePoly& a, const UnivariatePoly& b) = default;

private:
    void trim();
    std::vector<Scalar> c_;
};

/// Describes a monomial algebra Q[x_1, ..., x_n], optionally localized at the
/// powers of one monic nonconstant univariate polynomial s in a designated
/// variable. With a denominator present the descriptor names the fraction
/// algebra S^-1 A with its canonical A (+) V splitting.
class AlgebraDescriptor {
public:
    explicit AlgebraDescriptor(std::vector<std::string> variables);
    AlgebraDescriptor(std::vector<std::string> variables, int denom_var, UnivariatePoly s);

    std::size_t var_count() const { return vars_.size(); }
    const std::vector<std::string>& variables() const { return vars_; }
    /// Index of a variable name, or -1 when absent.
    int var_index(const std::string& name) const;

    bool has_denominator() const { return denom_.has_value(); }
    int denom_var() const;
    const UnivariatePoly& denom_poly() const;
    int denom_degree() const;
    /// True when s is exactly the denominator variable itself (the Laurent case).
    bool denominator_is_variable() const;

    friend bool operator==(const AlgebraDescriptor& a, const AlgebraDescriptor& b) = default;

private:
    struct Denominator {
        int variable;
        UnivariatePoly s;
        friend bool operator==(const Denominator&, const Denominator&) = default;
    };
    std::vector<std::string> vars_;
    std::optional<Denominator> denom_;
};

/// Canonical basis key of a fraction algebra: a plain monomial when
/// denom_power == 0, and x^j / s^k (j below deg s in the denominator variable,
/// other exponents unrestricted) when denom_power == k >= 1. Keys are always
/// stored with the s-adic expansion already applied.
struct BasisKey {
    std::vector<std::int32_t> exponents;
    std::int32_t denom_power = 0;

    bool is_polynomial() const { return denom_power == 0; }
    static BasisKey unit(std::size_t var_count) { return BasisKey{std::vector<std::int32_t>(var_count, 0), 0}; }
    bool is_unit() const;

    friend bool operator==(const BasisKey&, const BasisKey&) = default;
    // Lexicographic on exponents in declaration order, then by denominator power.
    friend auto operator<=>(const BasisKey&, const BasisKey&) = default;
};

/// Throws DomainError unless the key is valid for the descriptor.
void validate_key(const AlgebraDescriptor& alg, const BasisKey& key);

/// Element of the (fraction) algebra named by its descriptor: a finite
/// Q-linear combination of basis keys with no stored zero coefficients.
class AlgebraElement {
public:
    explicit AlgebraElement(AlgebraDescriptor alg) : alg_(std::move(alg)) {}

    static AlgebraElement zero(const AlgebraDescriptor& alg) { return AlgebraElement(alg); }
    static AlgebraElement one(const AlgebraDescriptor& alg);
    static AlgebraElement constant(const AlgebraDescriptor& alg, const Scalar& c);
    static AlgebraElement variable(const AlgebraDescriptor& alg, int index);
    static AlgebraElement monomial(const AlgebraDescriptor& alg, BasisKey key, const Scalar& c = 1);
    /// The basis element 1/s^k (k >= 1); requires a denominator.
    static AlgebraElement s_inverse_power(const AlgebraDescriptor& alg, int k);
    /// The polynomial s itself as an element of A.
    static AlgebraElement s_polynomial(const AlgebraDescriptor& alg);

    const AlgebraDescriptor& descriptor() const { return alg_; }
    const std::map<BasisKey, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;

    /// Accumulates c at key, dropping the entry when the sum vanishes.
    void add_term(const BasisKey& key, const Scalar& c);

    AlgebraElement operator-() const;
    AlgebraElement operator+(const AlgebraElement& rhs) const;
    AlgebraElement operator-(const AlgebraElement& rhs) const;
    AlgebraElement scaled(const Scalar& c) const;

    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) = default;

private:
    AlgebraDescriptor alg_;
    std::map<BasisKey, Scalar> terms_;
};

/// Commutative product in S^-1 A. Exponents and denominator powers add, then
/// the result is canonicalized by division by s^k and s-adic expansion of the
/// fractional remainder.
AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b);

AlgebraElement pow(const AlgebraElement& a, int k);

/// The canonical A (+) V decomposition: (polynomial part, fractional part).
/// Requires the descriptor to carry a denominator.
std::pair<AlgebraElement, AlgebraElement> split(const AlgebraElement& a);

} // namespace rbx
