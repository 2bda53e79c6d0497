#pragma once

#include "rbx/algebra.hpp"
#include "rbx/expression.hpp"
#include "rbx/guards.hpp"
#include "rbx/localize.hpp"
#include "rbx/operators.hpp"
#include "rbx/shuffle.hpp"
#include "rbx/targets.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rbx {

enum class PresentationKind { localization, tensor_product };

/// One side of a tensor-product presentation: a base algebra (optionally a
/// fraction algebra, in which case the component stands for its Rota-Baxter
/// localization) together with its operator on the polynomial part.
struct TensorComponent {
    AlgebraDescriptor alg;
    BaseOperator op;
};

/// The pushout of the component algebras along the shared variables: the
/// monomial algebra on the union of the variable sets with shared variables
/// identified. Carries the left component's denominator; the right component
/// must not have one. Name collisions outside the shared set are rejected.
AlgebraDescriptor tensor_base(const TensorComponent& left, const TensorComponent& right,
                              const std::vector<std::string>& shared_vars);

/// A presented quotient of a free Rota-Baxter algebra, given by oriented
/// relation families:
///   - localization: { P(a) - 1 (x) a | a in the polynomial part }, oriented
///     to evaluate the base operator;
///   - tensor product: { P(r_1 [] 1) - (1 [] 1) (x) (r_1 [] 1) } and its
///     right-hand mirror, oriented to evaluate the component operators.
class Presentation {
public:
    static Presentation localization(AlgebraDescriptor alg, BaseOperator op, Scalar weight);
    /// Validates the inclusion diagram: shared variables must occur in both
    /// components with operators agreeing on them (checked by sampling
    /// low-degree shared monomials), and component weights must match.
    static Presentation tensor_product(std::vector<std::string> shared_vars, TensorComponent left,
                                       TensorComponent right, Scalar weight);

    PresentationKind kind() const { return kind_; }
    const AlgebraDescriptor& carrier() const { return carrier_; }
    const Scalar& weight() const { return weight_; }

    const BaseOperator& base_operator() const; // localization only
    const TensorComponent& left() const;       // tensor only
    const TensorComponent& right() const;
    const std::vector<std::string>& shared_vars() const;

    /// True when the oriented rules can evaluate P on this carrier key.
    bool key_evaluable(const BasisKey& key) const;
    /// The operator image of an evaluable key, as a carrier element.
    AlgebraElement eval_p_image(const BasisKey& key) const;
    /// Rule id used in traces for an evaluable key.
    std::string eval_rule_name(const BasisKey& key) const;

    bool key_pure_left(const BasisKey& key) const;
    bool key_pure_right(const BasisKey& key) const;
    /// Component-side views of a carrier key (shared variables route left).
    BasisKey left_key_part(const BasisKey& key) const;
    BasisKey right_key_part(const BasisKey& key) const;

    /// Maps a component element onto the combined carrier.
    AlgebraElement inject(int side, const AlgebraElement& r) const;

private:
    Presentation() = default;

    PresentationKind kind_ = PresentationKind::localization;
    AlgebraDescriptor carrier_{std::vector<std::string>{}};
    Scalar weight_{0};
    std::optional<BaseOperator> op_;

    std::optional<TensorComponent> left_;
    std::optional<TensorComponent> right_;
    std::vector<std::string> shared_;
    std::vector<int> left_to_carrier_;
    std::vector<int> right_to_carrier_;
    std::vector<bool> carrier_var_is_left_;
    std::vector<bool> carrier_var_is_right_;
    std::optional<BaseOperator> left_carrier_op_;  // component ops with variable
    std::optional<BaseOperator> right_carrier_op_; // indices remapped to the carrier
};

/// A rewriting fixpoint: no oriented rule of the presentation applies to any
/// word. Slots past the first hold only keys the rules cannot evaluate.
struct NormalForm {
    ShuffleElement element;
};

enum class EqualityStatus { proven_equal, not_proven };

/// Semi-decision verdict: proven_equal iff the two normal forms coincide;
/// not_proven never claims inequality.
struct EqualityVerdict {
    EqualityStatus status;
    NormalForm lhs;
    NormalForm rhs;
    bool proven() const { return status == EqualityStatus::proven_equal; }
};

enum class ReductionStrategy { innermost, rb_orientation_first };

struct RewriteTrace {
    std::vector<std::string> lines;
};

/// Reduces an expression to its normal form. Innermost-first and
/// deterministic; the rb_orientation_first strategy eliminates products of
/// P-terms through the Rota-Baxter orientation
///   P(x)P(y) -> P(xP(y)) + P(P(x)y) + weight * P(xy)
/// before any evaluation, and must agree with the default strategy.
NormalForm normalize(const RBExpression& e, const Presentation& pres,
                     ReductionStrategy strategy = ReductionStrategy::innermost, const Guards& guards = {},
                     RewriteTrace* trace = nullptr);

EqualityVerdict equal_mod_ideal(const RBExpression& e1, const RBExpression& e2, const Presentation& pres,
                                const Guards& guards = {});

/// The canonical injection k_i of a component element, as an expression.
RBExpression tensor_injection(const Presentation& pres, int side, const AlgebraElement& r);

/// Variable images defining a morphism from one tensor component into a
/// target, with an optional image of 1/s when the component is localized.
template <RotaBaxterAlgebra A>
struct ComponentImages {
    std::vector<typename A::Element> var_images;
    std::optional<typename A::Element> s_inverse;
};

/// Evaluates an expression over the combined carrier through the pair
/// (psi_1, psi_2) of component morphisms, interpreting P as the target
/// operator. Checks on sampled shared monomials that the two morphisms agree
/// where the components are glued.
template <RotaBaxterAlgebra A>
typename A::Element universal_map(const A& target, const RBExpression& e, const Presentation& pres,
                                  const ComponentImages<A>& psi1, const ComponentImages<A>& psi2);

/// Converts a localized-carrier element to an expression through the
/// reconstruction identity, normalizes it under the matching localization
/// presentation and compares with the original element word-for-word.
EqualityVerdict cross_check_localization(const LocalizedElement& u, const Guards& guards = {});

/// The shipped instance of the localization/tensor compatibility check:
/// A = Q[x] localized at s = x, B = Q[x,y] with the integral in x, weight 0.
/// Verifies g(h(t)) = t on sampled localized elements and h(g(e)) == e via
/// the equality semi-decision on sampled expressions.
struct Lemma44Report {
    int element_samples = 0;
    int expression_samples = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

Lemma44Report lemma44_check(int element_samples, int expression_samples, std::uint64_t seed,
                            const Guards& guards = {});

// --- template implementation -------------------------------------------------

template <RotaBaxterAlgebra A>
typename A::Element universal_map(const A& target, const RBExpression& e, const Presentation& pres,
                                  const ComponentImages<A>& psi1, const ComponentImages<A>& psi2) {
    if (pres.kind() != PresentationKind::tensor_product)
        throw DomainError("universal_map requires a tensor-product presentation");
    if (Scalar(target.weight()) != pres.weight())
        throw DomainError("weight mismatch in universal map");
    if (psi1.var_images.size() != pres.left().alg.var_count() ||
        psi2.var_images.size() != pres.right().alg.var_count())
        throw DomainError("component images do not match the component variables");

    // psi_1 . f_1 = psi_2 . f_2 sampled on shared monomials of degree <= 3.
    for (const auto& name : pres.shared_vars()) {
        const auto li = static_cast<std::size_t>(pres.left().alg.var_index(name));
        const auto ri = static_cast<std::size_t>(pres.right().alg.var_index(name));
        auto lhs = target.one();
        auto rhs = target.one();
        for (int d = 1; d <= 3; ++d) {
            lhs = target.mul(lhs, psi1.var_images[li]);
            rhs = target.mul(rhs, psi2.var_images[ri]);
            if (!target.equal(lhs, rhs))
                throw DomainError("component morphisms disagree on the shared subalgebra");
        }
    }

    const auto* s_inv = psi1.s_inverse.has_value() ? &*psi1.s_inverse : nullptr;
    auto leaf_image = [&](const AlgebraElement& a) {
        auto acc = target.zero();
        for (const auto& [key, c] : a.terms()) {
            const auto left = eval_key(target, std::span<const typename A::Element>(psi1.var_images),
                                       s_inv, pres.left_key_part(key));
            const auto right = eval_key(target, std::span<const typename A::Element>(psi2.var_images),
                                        nullptr, pres.right_key_part(key));
            acc = target.add(acc, target.scale(c, target.mul(left, right)));
        }
        return acc;
    };
    return evaluate_expression(target, e, leaf_image);
}

} // namespace rbx
