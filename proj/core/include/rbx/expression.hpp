#pragma once

#include "rbx/algebra.hpp"
#include "rbx/scalar.hpp"
#include "rbx/targets.hpp"

#include <string>
#include <vector>

namespace rbx {

/// Syntax tree over a presented Rota-Baxter algebra before normalization:
/// leaves are algebra elements, inner nodes are sums, scalar multiples,
/// products and operator applications.
class RBExpression {
public:
    enum class Kind { leaf, sum, scale, product, p_apply };

    static RBExpression leaf(AlgebraElement a);
    static RBExpression sum(std::vector<RBExpression> children);
    static RBExpression scale(Scalar c, RBExpression child);
    static RBExpression product(std::vector<RBExpression> children);
    static RBExpression apply_p(RBExpression child);

    Kind kind() const { return kind_; }
    const Scalar& scalar() const { return scalar_; }
    const AlgebraElement& leaf_element() const;
    const std::vector<RBExpression>& children() const { return children_; }

    /// The shared descriptor of the expression's leaves. DomainError when
    /// leaves disagree or the expression has no leaf at all.
    const AlgebraDescriptor& descriptor() const;

    std::string str() const;

    friend bool operator==(const RBExpression&, const RBExpression&) = default;

private:
    RBExpression() = default;

    Kind kind_ = Kind::leaf;
    Scalar scalar_{1};
    std::vector<AlgebraElement> leaf_; // 0 or 1 entries; vector keeps the type regular
    std::vector<RBExpression> children_;
};

/// Evaluates the tree in any concrete Rota-Baxter algebra, interpreting
/// leaves through leaf_image.
template <RotaBaxterAlgebra A, typename LeafFn>
typename A::Element evaluate_expression(const A& target, const RBExpression& e, LeafFn&& leaf_image) {
    switch (e.kind()) {
    case RBExpression::Kind::leaf:
        return leaf_image(e.leaf_element());
    case RBExpression::Kind::scale:
        return target.scale(e.scalar(), evaluate_expression(target, e.children().front(), leaf_image));
    case RBExpression::Kind::sum: {
        auto acc = target.zero();
        for (const auto& child : e.children())
            acc = target.add(acc, evaluate_expression(target, child, leaf_image));
        return acc;
    }
    case RBExpression::Kind::product: {
        auto acc = target.one();
        for (const auto& child : e.children())
            acc = target.mul(acc, evaluate_expression(target, child, leaf_image));
        return acc;
    }
    case RBExpression::Kind::p_apply:
        return target.apply_p(evaluate_expression(target, e.children().front(), leaf_image));
    }
    throw InternalError("unreachable expression kind");
}

template <RotaBaxterAlgebra A>
typename A::Element evaluate_expression(const A& target, const RBExpression& e) {
    return evaluate_expression(target, e, [&](const AlgebraElement& a) { return target.from_algebra(a); });
}

/// The reconstruction of a pure word as an expression:
/// a_0 (x) ... (x) a_k  =  a_0 * P(a_1 * P( ... P(a_k) ... )).
RBExpression expression_from_word(const AlgebraDescriptor& alg, const TensorWord& w);

/// Word-by-word reconstruction of a canonical element.
RBExpression expression_from_terms(const AlgebraDescriptor& alg,
                                   const std::map<TensorWord, Scalar>& terms);

} // namespace rbx
