#include "rbx/operators.hpp"

#include "rbx/errors.hpp"

namespace rbx {

BaseOperator BaseOperator::zero(Scalar declared_weight) {
    return BaseOperator(BaseOperatorKind::zero, -1, std::move(declared_weight));
}

BaseOperator BaseOperator::identity() {
    return BaseOperator(BaseOperatorKind::identity, -1, Scalar(-1));
}

BaseOperator BaseOperator::neg_identity() {
    return BaseOperator(BaseOperatorKind::neg_identity, -1, Scalar(1));
}

BaseOperator BaseOperator::integral(int variable) {
    if (variable < 0)
        throw DomainError("integral operator requires a variable index");
    return BaseOperator(BaseOperatorKind::integral, variable, Scalar(0));
}

std::string BaseOperator::name() const {
    switch (kind_) {
    case BaseOperatorKind::zero: return "zero";
    case BaseOperatorKind::identity: return "id";
    case BaseOperatorKind::neg_identity: return "negid";
    case BaseOperatorKind::integral: return "integral";
    }
    return "?";
}

AlgebraElement apply_base_operator(const BaseOperator& op, const AlgebraElement& a) {
    switch (op.kind()) {
    case BaseOperatorKind::zero:
        return AlgebraElement::zero(a.descriptor());
    case BaseOperatorKind::identity:
        return a;
    case BaseOperatorKind::neg_identity:
        return -a;
    case BaseOperatorKind::integral: {
        const auto var = static_cast<std::size_t>(op.variable());
        if (var >= a.descriptor().var_count())
            throw DomainError("integration variable not present in descriptor");
        AlgebraElement out(a.descriptor());
        for (const auto& [key, c] : a.terms()) {
            if (!key.is_polynomial())
                throw OperatorUndefined("operator undefined on fractional part");
            BasisKey image = key;
            const std::int32_t n = image.exponents[var];
            image.exponents[var] = n + 1;
            out.add_term(image, c / Scalar(n + 1));
        }
        return out;
    }
    }
    throw InternalError("unreachable operator kind");
}

} // namespace rbx
