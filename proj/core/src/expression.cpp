#include "rbx/expression.hpp"

#include "rbx/printer.hpp"

#include <sstream>

namespace rbx {

RBExpression RBExpression::leaf(AlgebraElement a) {
    RBExpression e;
    e.kind_ = Kind::leaf;
    e.leaf_.push_back(std::move(a));
    return e;
}

RBExpression RBExpression::sum(std::vector<RBExpression> children) {
    if (children.empty())
        throw DomainError("sum node needs at least one child");
    RBExpression e;
    e.kind_ = Kind::sum;
    e.children_ = std::move(children);
    return e;
}

RBExpression RBExpression::scale(Scalar c, RBExpression child) {
    RBExpression e;
    e.kind_ = Kind::scale;
    e.scalar_ = std::move(c);
    e.children_.push_back(std::move(child));
    return e;
}

RBExpression RBExpression::product(std::vector<RBExpression> children) {
    if (children.empty())
        throw DomainError("product node needs at least one child");
    RBExpression e;
    e.kind_ = Kind::product;
    e.children_ = std::move(children);
    return e;
}

RBExpression RBExpression::apply_p(RBExpression child) {
    RBExpression e;
    e.kind_ = Kind::p_apply;
    e.children_.push_back(std::move(child));
    return e;
}

const AlgebraElement& RBExpression::leaf_element() const {
    if (kind_ != Kind::leaf)
        throw InternalError("leaf_element on a non-leaf node");
    return leaf_.front();
}

namespace {

const AlgebraDescriptor* find_descriptor(const RBExpression& e) {
    if (e.kind() == RBExpression::Kind::leaf)
        return &e.leaf_element().descriptor();
    for (const auto& child : e.children())
        if (const auto* d = find_descriptor(child))
            return d;
    return nullptr;
}

void check_descriptor(const RBExpression& e, const AlgebraDescriptor& alg) {
    if (e.kind() == RBExpression::Kind::leaf) {
        if (e.leaf_element().descriptor() != alg)
            throw DomainError("expression leaves over different descriptors");
        return;
    }
    for (const auto& child : e.children())
        check_descriptor(child, alg);
}

} // namespace

const AlgebraDescriptor& RBExpression::descriptor() const {
    const AlgebraDescriptor* d = find_descriptor(*this);
    if (d == nullptr)
        throw DomainError("expression has no leaves");
    check_descriptor(*this, *d);
    return *d;
}

std::string RBExpression::str() const {
    std::ostringstream os;
    switch (kind_) {
    case Kind::leaf:
        os << "(" << to_text(leaf_element()) << ")";
        break;
    case Kind::scale:
        os << scalar_.str() << "*" << children_.front().str();
        break;
    case Kind::sum: {
        os << "(";
        for (std::size_t i = 0; i < children_.size(); ++i) {
            if (i)
                os << " + ";
            os << children_[i].str();
        }
        os << ")";
        break;
    }
    case Kind::product: {
        for (std::size_t i = 0; i < children_.size(); ++i) {
            if (i)
                os << "*";
            os << children_[i].str();
        }
        break;
    }
    case Kind::p_apply:
        os << "P(" << children_.front().str() << ")";
        break;
    }
    return os.str();
}

RBExpression expression_from_word(const AlgebraDescriptor& alg, const TensorWord& w) {
    RBExpression acc = RBExpression::leaf(AlgebraElement::monomial(alg, w.slots.back()));
    for (std::size_t i = w.slots.size() - 1; i-- > 0;) {
        acc = RBExpression::product({RBExpression::leaf(AlgebraElement::monomial(alg, w.slots[i])),
                                     RBExpression::apply_p(std::move(acc))});
    }
    return acc;
}

RBExpression expression_from_terms(const AlgebraDescriptor& alg,
                                   const std::map<TensorWord, Scalar>& terms) {
    if (terms.empty())
        return RBExpression::leaf(AlgebraElement::zero(alg));
    std::vector<RBExpression> parts;
    parts.reserve(terms.size());
    for (const auto& [w, c] : terms) {
        RBExpression word = expression_from_word(alg, w);
        parts.push_back(c.is_one() ? std::move(word) : RBExpression::scale(c, std::move(word)));
    }
    return parts.size() == 1 ? std::move(parts.front()) : RBExpression::sum(std::move(parts));
}

} // namespace rbx
