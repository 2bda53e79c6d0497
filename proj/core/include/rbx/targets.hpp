#pragma once

#include "rbx/algebra.hpp"
#include "rbx/guards.hpp"
#include "rbx/localize.hpp"
#include "rbx/operators.hpp"
#include "rbx/scalar.hpp"
#include "rbx/shuffle.hpp"

#include <concepts>
#include <span>
#include <vector>

namespace rbx {

/// A concrete Rota-Baxter algebra interface: enough structure to state the
/// defining identity and to evaluate words and expressions.
template <typename A>
concept RotaBaxterAlgebra = requires(const A& alg, const typename A::Element& x,
                                     const typename A::Element& y, const Scalar& c) {
    typename A::Element;
    { alg.weight() } -> std::convertible_to<Scalar>;
    { alg.zero() } -> std::convertible_to<typename A::Element>;
    { alg.one() } -> std::convertible_to<typename A::Element>;
    { alg.add(x, y) } -> std::convertible_to<typename A::Element>;
    { alg.mul(x, y) } -> std::convertible_to<typename A::Element>;
    { alg.scale(c, x) } -> std::convertible_to<typename A::Element>;
    { alg.apply_p(x) } -> std::convertible_to<typename A::Element>;
    { alg.equal(x, y) } -> std::convertible_to<bool>;
    { alg.from_algebra(std::declval<const AlgebraElement&>()) } -> std::convertible_to<typename A::Element>;
};

/// Checks P(x)P(y) = P(xP(y) + P(x)y + weight * xy) exactly.
template <RotaBaxterAlgebra A>
bool verify_rb_axiom(const A& alg, const typename A::Element& x, const typename A::Element& y) {
    const auto lhs = alg.mul(alg.apply_p(x), alg.apply_p(y));
    const auto inner = alg.add(alg.add(alg.mul(x, alg.apply_p(y)), alg.mul(alg.apply_p(x), y)),
                               alg.scale(alg.weight(), alg.mul(x, y)));
    return alg.equal(lhs, alg.apply_p(inner));
}

/// A base algebra with a concrete operator: elements are AlgebraElements.
class BaseRBAlgebra {
public:
    using Element = AlgebraElement;

    BaseRBAlgebra(AlgebraDescriptor alg, BaseOperator op)
        : alg_(std::move(alg)), op_(std::move(op)) {}

    const AlgebraDescriptor& descriptor() const { return alg_; }
    const BaseOperator& base_operator() const { return op_; }

    Scalar weight() const { return op_.declared_weight(); }
    Element zero() const { return AlgebraElement::zero(alg_); }
    Element one() const { return AlgebraElement::one(alg_); }
    Element add(const Element& x, const Element& y) const { return x + y; }
    Element mul(const Element& x, const Element& y) const { return rbx::mul(x, y); }
    Element scale(const Scalar& c, const Element& x) const { return x.scaled(c); }
    Element apply_p(const Element& x) const { return apply_base_operator(op_, x); }
    bool equal(const Element& x, const Element& y) const { return x == y; }
    Element from_algebra(const AlgebraElement& a) const {
        if (a.descriptor() != alg_)
            throw DomainError("element over the wrong descriptor");
        return a;
    }

private:
    AlgebraDescriptor alg_;
    BaseOperator op_;
};

/// The free Rota-Baxter algebra Sh(A) itself as a target.
class FreeRBAlgebra {
public:
    using Element = ShuffleElement;

    FreeRBAlgebra(AlgebraDescriptor alg, Scalar weight, Guards guards = {})
        : alg_(std::move(alg)), weight_(std::move(weight)), guards_(guards) {}

    const AlgebraDescriptor& descriptor() const { return alg_; }

    Scalar weight() const { return weight_; }
    Element zero() const { return ShuffleElement::zero(alg_, weight_); }
    Element one() const { return ShuffleElement::one(alg_, weight_); }
    Element add(const Element& x, const Element& y) const { return x + y; }
    Element mul(const Element& x, const Element& y) const { return msh_product(x, y, guards_); }
    Element scale(const Scalar& c, const Element& x) const { return x.scaled(c); }
    Element apply_p(const Element& x) const { return shuffle_P(x, guards_); }
    bool equal(const Element& x, const Element& y) const { return x == y; }
    Element from_algebra(const AlgebraElement& a) const {
        if (a.descriptor() != alg_)
            throw DomainError("element over the wrong descriptor");
        return embed(a, weight_);
    }

private:
    AlgebraDescriptor alg_;
    Scalar weight_;
    Guards guards_;
};

/// The localized carrier (B, P_B) as a target.
class LocalizedRBAlgebra {
public:
    using Element = LocalizedElement;

    explicit LocalizedRBAlgebra(LocalizationContext ctx, Guards guards = {})
        : ctx_(std::move(ctx)), guards_(guards) {}

    const LocalizationContext& context() const { return ctx_; }

    Scalar weight() const { return ctx_.weight(); }
    Element zero() const { return LocalizedElement::zero(ctx_); }
    Element one() const { return LocalizedElement::one(ctx_); }
    Element add(const Element& x, const Element& y) const { return x + y; }
    Element mul(const Element& x, const Element& y) const { return b_product(x, y, guards_); }
    Element scale(const Scalar& c, const Element& x) const { return x.scaled(c); }
    Element apply_p(const Element& x) const { return p_localized(x, guards_); }
    bool equal(const Element& x, const Element& y) const { return x == y; }
    Element from_algebra(const AlgebraElement& a) const { return carrier_inclusion(ctx_, a); }

private:
    LocalizationContext ctx_;
    Guards guards_;
};

/// Evaluates a basis key under variable images, with an optional image for
/// 1/s covering fractional keys.
template <RotaBaxterAlgebra A>
typename A::Element eval_key(const A& target, std::span<const typename A::Element> var_images,
                             const typename A::Element* s_inverse, const BasisKey& key) {
    auto acc = target.one();
    for (std::size_t i = 0; i < var_images.size(); ++i)
        for (std::int32_t e = 0; e < key.exponents[i]; ++e)
            acc = target.mul(acc, var_images[i]);
    if (key.denom_power > 0) {
        if (s_inverse == nullptr)
            throw DomainError("fractional key but no denominator inverse image");
        for (std::int32_t e = 0; e < key.denom_power; ++e)
            acc = target.mul(acc, *s_inverse);
    }
    return acc;
}

template <RotaBaxterAlgebra A>
typename A::Element eval_element(const A& target, std::span<const typename A::Element> var_images,
                                 const typename A::Element* s_inverse, const AlgebraElement& a) {
    auto acc = target.zero();
    for (const auto& [key, c] : a.terms())
        acc = target.add(acc, target.scale(c, eval_key(target, var_images, s_inverse, key)));
    return acc;
}

/// Evaluates a pure word as nested operator applications:
/// a_0 * P(a_1 * P( ... P(a_k) ... )).
template <RotaBaxterAlgebra A, typename SlotFn>
typename A::Element eval_word_nested(const A& target, const TensorWord& w, SlotFn&& slot_image) {
    auto acc = slot_image(w.slots.back());
    for (std::size_t i = w.slots.size() - 1; i-- > 0;)
        acc = target.mul(slot_image(w.slots[i]), target.apply_p(acc));
    return acc;
}

/// The collapse morphism phi: Sh(R) -> R induced by the identity of R;
/// evaluates each word as nested operator applications in the target.
template <RotaBaxterAlgebra A>
typename A::Element collapse_phi(const A& target, const ShuffleElement& u) {
    if (Scalar(target.weight()) != u.weight())
        throw DomainError("weight mismatch in collapse");
    auto acc = target.zero();
    for (const auto& [w, c] : u.terms()) {
        auto word_value = eval_word_nested(target, w, [&](const BasisKey& key) {
            return target.from_algebra(AlgebraElement::monomial(u.descriptor(), key));
        });
        acc = target.add(acc, target.scale(c, word_value));
    }
    return acc;
}

/// The universal extension of an algebra map A -> target to Sh(A), given by
/// images of the source variables.
template <RotaBaxterAlgebra A>
typename A::Element free_extension(const A& target, std::span<const typename A::Element> var_images,
                                   const ShuffleElement& u) {
    if (Scalar(target.weight()) != u.weight())
        throw DomainError("weight mismatch in free extension");
    auto acc = target.zero();
    for (const auto& [w, c] : u.terms()) {
        auto word_value = eval_word_nested(
            target, w, [&](const BasisKey& key) { return eval_key(target, var_images, nullptr, key); });
        acc = target.add(acc, target.scale(c, word_value));
    }
    return acc;
}

/// The universal extension of a Rota-Baxter morphism f: A -> target to the
/// localization B, where s_inverse realizes f(s)^-1. Checks the invertibility
/// precondition f(s) * s_inverse = 1 exactly.
template <RotaBaxterAlgebra A>
typename A::Element extend_to_localization(const A& target, const LocalizationContext& ctx,
                                           std::span<const typename A::Element> var_images,
                                           const typename A::Element& s_inverse,
                                           const LocalizedElement& u) {
    if (Scalar(target.weight()) != ctx.weight())
        throw DomainError("weight mismatch in localization extension");
    const auto s_image =
        eval_element(target, var_images, nullptr, AlgebraElement::s_polynomial(ctx.algebra()));
    if (!target.equal(target.mul(s_image, s_inverse), target.one()))
        throw DomainError("denominator image is not inverted by the supplied element");
    auto acc = target.zero();
    for (const auto& [w, c] : u.terms()) {
        auto word_value = eval_word_nested(target, w, [&](const BasisKey& key) {
            return eval_key(target, var_images, &s_inverse, key);
        });
        acc = target.add(acc, target.scale(c, word_value));
    }
    return acc;
}

} // namespace rbx
