#pragma once

#include "rbx/algebra.hpp"
#include "rbx/guards.hpp"
#include "rbx/operators.hpp"
#include "rbx/scalar.hpp"
#include "rbx/shuffle.hpp"

#include <map>
#include <string>

namespace rbx {

/// The three construction regimes of the explicit localization.
enum class LocalizationVariant { general_weight, weight_zero, zero_operator_quotient };

std::string variant_name(LocalizationVariant v);

/// Fixes the data a localized carrier lives over: a fraction algebra S^-1 A
/// with its canonical splitting, a base operator on the polynomial part, the
/// weight, and the chosen regime. Validated on construction:
///   - the descriptor must carry a denominator;
///   - weight_zero requires weight 0; zero_operator_quotient additionally
///     requires the zero operator;
///   - otherwise the operator's declared weight must equal the weight.
class LocalizationContext {
public:
    LocalizationContext(AlgebraDescriptor alg, Scalar weight, LocalizationVariant variant,
                        BaseOperator base_op);

    const AlgebraDescriptor& algebra() const { return alg_; }
    const Scalar& weight() const { return weight_; }
    LocalizationVariant variant() const { return variant_; }
    const BaseOperator& base_operator() const { return op_; }

    friend bool operator==(const LocalizationContext&, const LocalizationContext&) = default;

private:
    AlgebraDescriptor alg_;
    Scalar weight_;
    LocalizationVariant variant_;
    BaseOperator op_;
};

/// Element of the localized carrier B = S^-1A (+) sum_k (S^-1A (x) V^(x k)):
/// a linear combination of tensor words whose slot 0 is an arbitrary basis
/// key of S^-1A and whose later slots are strictly fractional (V-basis) keys.
class LocalizedElement {
public:
    explicit LocalizedElement(LocalizationContext ctx) : ctx_(std::move(ctx)) {}

    static LocalizedElement zero(const LocalizationContext& ctx) { return LocalizedElement(ctx); }
    static LocalizedElement one(const LocalizationContext& ctx);
    static LocalizedElement word(const LocalizationContext& ctx, TensorWord w, const Scalar& c = 1);

    const LocalizationContext& context() const { return ctx_; }
    const std::map<TensorWord, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const TensorWord& w, const Scalar& c);
    void add_terms(const std::map<TensorWord, Scalar>& terms);

    LocalizedElement operator-() const;
    LocalizedElement operator+(const LocalizedElement& rhs) const;
    LocalizedElement operator-(const LocalizedElement& rhs) const;
    LocalizedElement scaled(const Scalar& c) const;

    friend bool operator==(const LocalizedElement&, const LocalizedElement&) = default;

private:
    LocalizationContext ctx_;
    std::map<TensorWord, Scalar> terms_;
};

/// Throws InternalError unless every word has fractional keys in slots >= 1.
void check_carrier_word(const LocalizationContext& ctx, const TensorWord& w);

/// Multiplication of B: the mixable shuffle restricted to the carrier. In the
/// zero-operator quotient the projection killing polynomial parts in slots
/// >= 1 is applied eagerly, keeping elements in canonical coset form.
LocalizedElement b_product(const LocalizedElement& u, const LocalizedElement& v, const Guards& guards = {});

/// The localized Rota-Baxter operator, defined per regime:
///   - a word headed by a fractional key gains a unit slot (free prepend);
///   - a word headed by a polynomial key a recurses through
///     P(a (x) u) = P_A(a) (x) u - P(P_A(a) u) - weight * P(a u),
///     where P_A(a) u multiplies into slot 1 and re-splits (the weight term
///     drops in the weight-zero regime);
///   - in the zero-operator quotient, polynomial heads are annihilated and
///     fractional heads gain a unit slot.
LocalizedElement p_localized(const LocalizedElement& u, const Guards& guards = {});

/// The structure map i_S: A -> B on polynomial elements, as length-1 words.
/// DomainError on fractional input.
LocalizedElement structure_map(const LocalizationContext& ctx, const AlgebraElement& a);

/// The canonical inclusion S^-1A -> B (fractional keys allowed).
LocalizedElement carrier_inclusion(const LocalizationContext& ctx, const AlgebraElement& a);

/// The length-1 word 1/s^k, the inverse of structure_map(s^k).
LocalizedElement invert_image(const LocalizationContext& ctx, int k);

} // namespace rbx
