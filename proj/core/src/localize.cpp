#include "rbx/localize.hpp"

#include "rbx/errors.hpp"

namespace rbx {

std::string variant_name(LocalizationVariant v) {
    switch (v) {
    case LocalizationVariant::general_weight: return "general";
    case LocalizationVariant::weight_zero: return "weight-zero";
    case LocalizationVariant::zero_operator_quotient: return "zero-op";
    }
    return "?";
}

LocalizationContext::LocalizationContext(AlgebraDescriptor alg, Scalar weight, LocalizationVariant variant,
                                         BaseOperator base_op)
    : alg_(std::move(alg)), weight_(std::move(weight)), variant_(variant), op_(std::move(base_op)) {
    if (!alg_.has_denominator())
        throw DomainError("localization requires a descriptor with denominator");
    if (variant_ == LocalizationVariant::zero_operator_quotient) {
        if (op_.kind() != BaseOperatorKind::zero)
            throw DomainError("zero-operator quotient requires the zero operator");
        if (!weight_.is_zero())
            throw DomainError("zero-operator quotient requires weight 0");
    } else if (variant_ == LocalizationVariant::weight_zero) {
        if (!weight_.is_zero())
            throw DomainError("weight-zero variant requires weight 0");
        if (op_.kind() != BaseOperatorKind::zero && op_.declared_weight() != weight_)
            throw DomainError("base operator weight does not match the carrier weight");
    } else {
        if (op_.kind() != BaseOperatorKind::zero && op_.declared_weight() != weight_)
            throw DomainError("base operator weight does not match the carrier weight");
    }
    if (op_.kind() == BaseOperatorKind::integral &&
        (op_.variable() < 0 || op_.variable() >= static_cast<int>(alg_.var_count())))
        throw DomainError("integration variable not present in descriptor");
}

LocalizedElement LocalizedElement::one(const LocalizationContext& ctx) {
    TensorWord w{{BasisKey::unit(ctx.algebra().var_count())}};
    return word(ctx, std::move(w));
}

LocalizedElement LocalizedElement::word(const LocalizationContext& ctx, TensorWord w, const Scalar& c) {
    if (w.slots.empty())
        throw DomainError("tensor words must have at least one slot");
    for (const auto& key : w.slots)
        validate_key(ctx.algebra(), key);
    check_carrier_word(ctx, w);
    LocalizedElement e(ctx);
    e.add_term(w, c);
    return e;
}

void LocalizedElement::add_term(const TensorWord& w, const Scalar& c) {
    if (c.is_zero())
        return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        terms_.emplace(w, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero())
        terms_.erase(it);
}

void LocalizedElement::add_terms(const std::map<TensorWord, Scalar>& terms) {
    for (const auto& [w, c] : terms)
        add_term(w, c);
}

LocalizedElement LocalizedElement::operator-() const {
    LocalizedElement r(ctx_);
    for (const auto& [w, c] : terms_)
        r.terms_.emplace(w, -c);
    return r;
}

LocalizedElement LocalizedElement::operator+(const LocalizedElement& rhs) const {
    if (ctx_ != rhs.ctx_)
        throw DomainError("localization context mismatch in addition");
    LocalizedElement r = *this;
    r.add_terms(rhs.terms_);
    return r;
}

LocalizedElement LocalizedElement::operator-(const LocalizedElement& rhs) const {
    return *this + (-rhs);
}

LocalizedElement LocalizedElement::scaled(const Scalar& c) const {
    LocalizedElement r(ctx_);
    if (c.is_zero())
        return r;
    for (const auto& [w, coeff] : terms_)
        r.terms_.emplace(w, coeff * c);
    return r;
}

void check_carrier_word(const LocalizationContext&, const TensorWord& w) {
    for (std::size_t i = 1; i < w.slots.size(); ++i)
        if (w.slots[i].is_polynomial())
            throw InternalError("carrier closure violated: polynomial key in slot >= 1");
}

namespace {

// Words of the quotient carrier keep only strictly fractional keys in slots
// >= 1; the coset projection deletes everything else.
void project_quotient(const LocalizationContext& ctx, std::map<TensorWord, Scalar>& terms) {
    if (ctx.variant() != LocalizationVariant::zero_operator_quotient)
        return;
    for (auto it = terms.begin(); it != terms.end();) {
        bool keep = true;
        for (std::size_t i = 1; i < it->first.slots.size(); ++i)
            if (it->first.slots[i].is_polynomial())
                keep = false;
        it = keep ? std::next(it) : terms.erase(it);
    }
}

class PLocalized {
public:
    PLocalized(const LocalizationContext& ctx, const Guards& guards) : ctx_(ctx), guards_(guards) {}

    std::map<TensorWord, Scalar> apply(const std::map<TensorWord, Scalar>& terms) {
        std::map<TensorWord, Scalar> out;
        for (const auto& [w, c] : terms)
            accumulate(out, word_image(w), c);
        return out;
    }

private:
    void accumulate(std::map<TensorWord, Scalar>& into, const std::map<TensorWord, Scalar>& from,
                    const Scalar& factor) {
        if (factor.is_zero())
            return;
        for (const auto& [w, c] : from) {
            auto it = into.find(w);
            if (it == into.end())
                into.emplace(w, c * factor);
            else {
                it->second += c * factor;
                if (it->second.is_zero())
                    into.erase(it);
            }
        }
    }

    std::map<TensorWord, Scalar> prepended(const TensorWord& w) {
        if (static_cast<int>(w.length()) + 1 > guards_.max_word_len)
            throw GuardError("word-length guard exceeded in localized operator");
        std::map<TensorWord, Scalar> r;
        r.emplace(prepend_unit(w), Scalar(1));
        return r;
    }

    // Image of a single carrier word under the localized operator; memoized
    // because the recursion on word length revisits shared subwords.
    const std::map<TensorWord, Scalar>& word_image(const TensorWord& w) {
        auto found = memo_.find(w);
        if (found != memo_.end())
            return found->second;

        std::map<TensorWord, Scalar> result;
        const BasisKey& head = w.slots.front();
        if (ctx_.variant() == LocalizationVariant::zero_operator_quotient) {
            // Polynomial heads land in the ideal; fractional heads prepend.
            if (!head.is_polynomial())
                result = prepended(w);
        } else if (!head.is_polynomial()) {
            // All-fractional word: the operator agrees with the free prepend.
            result = prepended(w);
        } else {
            const AlgebraDescriptor& alg = ctx_.algebra();
            const AlgebraElement a = AlgebraElement::monomial(alg, head);
            const AlgebraElement pa = apply_base_operator(ctx_.base_operator(), a);
            if (w.length() == 1) {
                for (const auto& [key, c] : pa.terms())
                    result.emplace(TensorWord{{key}}, c);
            } else {
                // P(a (x) u) = P_A(a) (x) u - P(P_A(a) u) - weight * P(a u)
                const TensorWord tail{{w.slots.begin() + 1, w.slots.end()}};
                std::map<TensorWord, Scalar> tail_table{{tail, Scalar(1)}};
                accumulate(result, attach_head(pa, tail_table), Scalar(1));

                const AlgebraElement slot1 = AlgebraElement::monomial(alg, w.slots[1]);
                const std::map<TensorWord, Scalar> rest{
                    {TensorWord{{w.slots.begin() + 2, w.slots.end()}}, Scalar(1)}};

                const auto recurse = [&](const AlgebraElement& into_slot1, const Scalar& factor) {
                    if (into_slot1.is_zero() || factor.is_zero())
                        return;
                    std::map<TensorWord, Scalar> shorter;
                    if (w.length() == 2) {
                        for (const auto& [key, c] : into_slot1.terms())
                            shorter.emplace(TensorWord{{key}}, c);
                    } else {
                        shorter = attach_head(into_slot1, rest);
                    }
                    accumulate(result, apply(shorter), factor);
                };

                recurse(mul(pa, slot1), Scalar(-1));
                if (!ctx_.weight().is_zero())
                    recurse(mul(a, slot1), -ctx_.weight());
            }
        }
        project_quotient(ctx_, result);
        return memo_.emplace(w, std::move(result)).first->second;
    }

    const LocalizationContext& ctx_;
    const Guards& guards_;
    std::map<TensorWord, std::map<TensorWord, Scalar>> memo_;
};

} // namespace

LocalizedElement b_product(const LocalizedElement& u, const LocalizedElement& v, const Guards& guards) {
    if (u.context() != v.context())
        throw DomainError("localization context mismatch in product");
    const LocalizationContext& ctx = u.context();
    auto table = msh_word_tables(ctx.algebra(), ctx.weight(), u.terms(), v.terms(), guards);
    project_quotient(ctx, table);
    LocalizedElement r(ctx);
    for (const auto& [w, c] : table) {
        check_carrier_word(ctx, w);
        r.add_term(w, c);
    }
    return r;
}

LocalizedElement p_localized(const LocalizedElement& u, const Guards& guards) {
    PLocalized op(u.context(), guards);
    LocalizedElement r(u.context());
    for (const auto& [w, c] : op.apply(u.terms())) {
        check_carrier_word(u.context(), w);
        r.add_term(w, c);
    }
    return r;
}

LocalizedElement structure_map(const LocalizationContext& ctx, const AlgebraElement& a) {
    if (a.descriptor() != ctx.algebra())
        throw DomainError("structure map applied to an element of the wrong algebra");
    for (const auto& [key, c] : a.terms())
        if (!key.is_polynomial())
            throw DomainError("structure map is defined on the polynomial part only");
    return carrier_inclusion(ctx, a);
}

LocalizedElement carrier_inclusion(const LocalizationContext& ctx, const AlgebraElement& a) {
    if (a.descriptor() != ctx.algebra())
        throw DomainError("inclusion applied to an element of the wrong algebra");
    LocalizedElement r(ctx);
    for (const auto& [key, c] : a.terms())
        r.add_term(TensorWord{{key}}, c);
    return r;
}

LocalizedElement invert_image(const LocalizationContext& ctx, int k) {
    return carrier_inclusion(ctx, AlgebraElement::s_inverse_power(ctx.algebra(), k));
}

} // namespace rbx
