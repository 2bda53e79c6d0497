#pragma once

#include "rbx/algebra.hpp"
#include "rbx/scalar.hpp"

#include <iosfwd>
#include <string>

namespace rbx {

enum class BaseOperatorKind { zero, identity, neg_identity, integral };

/// A concrete Rota-Baxter operator on the polynomial part of a base algebra,
/// together with its declared weight. The weight pairings are fixed by
/// construction: integral -> 0, identity -> -1, neg_identity -> +1; the zero
/// operator admits any weight.
class BaseOperator {
public:
    static BaseOperator zero(Scalar declared_weight = Scalar(0));
    static BaseOperator identity();
    static BaseOperator neg_identity();
    static BaseOperator integral(int variable);

    BaseOperatorKind kind() const { return kind_; }
    /// Integration variable; only meaningful for the integral kind.
    int variable() const { return variable_; }
    const Scalar& declared_weight() const { return weight_; }

    std::string name() const;

    friend bool operator==(const BaseOperator&, const BaseOperator&) = default;

private:
    BaseOperator(BaseOperatorKind kind, int variable, Scalar weight)
        : kind_(kind), variable_(variable), weight_(std::move(weight)) {}

    BaseOperatorKind kind_;
    int variable_;
    Scalar weight_;
};

/// Applies the operator linearly. The integral sends x^n to x^(n+1)/(n+1) in
/// its designated variable, carrying the remaining variables as coefficients;
/// it is undefined on fractional keys and throws OperatorUndefined there.
AlgebraElement apply_base_operator(const BaseOperator& op, const AlgebraElement& a);

} // namespace rbx
