#include "rbx/presentation.hpp"

#include "rbx/printer.hpp"
#include "rbx/sampling.hpp"

#include <algorithm>

namespace rbx {

AlgebraDescriptor tensor_base(const TensorComponent& left, const TensorComponent& right,
                              const std::vector<std::string>& shared_vars) {
    for (const auto& v : shared_vars)
        if (left.alg.var_index(v) < 0 || right.alg.var_index(v) < 0)
            throw DomainError("shared variable '" + v + "' missing from a tensor component");
    if (right.alg.has_denominator())
        throw DomainError("the right tensor component must not carry a denominator");
    const auto is_shared = [&](const std::string& v) {
        return std::find(shared_vars.begin(), shared_vars.end(), v) != shared_vars.end();
    };
    for (const auto& v : right.alg.variables())
        if (!is_shared(v) && left.alg.var_index(v) >= 0)
            throw DomainError("variable collision outside the shared set: '" + v + "'");

    std::vector<std::string> vars = left.alg.variables();
    for (const auto& v : right.alg.variables())
        if (!is_shared(v))
            vars.push_back(v);
    if (left.alg.has_denominator())
        return AlgebraDescriptor(std::move(vars), left.alg.denom_var(), left.alg.denom_poly());
    return AlgebraDescriptor(std::move(vars));
}

namespace {

void check_component_weight(const TensorComponent& c, const Scalar& weight) {
    if (c.op.kind() != BaseOperatorKind::zero && c.op.declared_weight() != weight)
        throw DomainError("component operator weight does not match the presentation weight");
}

BaseOperator remap_operator(const BaseOperator& op, const std::vector<int>& to_carrier) {
    if (op.kind() != BaseOperatorKind::integral)
        return op;
    return BaseOperator::integral(to_carrier[static_cast<std::size_t>(op.variable())]);
}

} // namespace

Presentation Presentation::localization(AlgebraDescriptor alg, BaseOperator op, Scalar weight) {
    if (!alg.has_denominator())
        throw DomainError("localization presentation requires a denominator");
    if (op.kind() != BaseOperatorKind::zero && op.declared_weight() != weight)
        throw DomainError("operator weight does not match the presentation weight");
    if (op.kind() == BaseOperatorKind::integral &&
        (op.variable() < 0 || op.variable() >= static_cast<int>(alg.var_count())))
        throw DomainError("integration variable not present in descriptor");
    Presentation p;
    p.kind_ = PresentationKind::localization;
    p.carrier_ = std::move(alg);
    p.weight_ = std::move(weight);
    p.op_ = std::move(op);
    return p;
}

Presentation Presentation::tensor_product(std::vector<std::string> shared_vars, TensorComponent left,
                                          TensorComponent right, Scalar weight) {
    check_component_weight(left, weight);
    check_component_weight(right, weight);

    Presentation p;
    p.kind_ = PresentationKind::tensor_product;
    p.carrier_ = tensor_base(left, right, shared_vars);
    p.weight_ = std::move(weight);

    p.left_to_carrier_.reserve(left.alg.var_count());
    for (const auto& v : left.alg.variables())
        p.left_to_carrier_.push_back(p.carrier_.var_index(v));
    p.right_to_carrier_.reserve(right.alg.var_count());
    for (const auto& v : right.alg.variables())
        p.right_to_carrier_.push_back(p.carrier_.var_index(v));

    p.carrier_var_is_left_.assign(p.carrier_.var_count(), false);
    p.carrier_var_is_right_.assign(p.carrier_.var_count(), false);
    for (int i : p.left_to_carrier_)
        p.carrier_var_is_left_[static_cast<std::size_t>(i)] = true;
    for (int i : p.right_to_carrier_)
        p.carrier_var_is_right_[static_cast<std::size_t>(i)] = true;

    p.left_carrier_op_ = remap_operator(left.op, p.left_to_carrier_);
    p.right_carrier_op_ = remap_operator(right.op, p.right_to_carrier_);
    p.shared_ = std::move(shared_vars);
    p.left_ = std::move(left);
    p.right_ = std::move(right);

    // The inclusions must commute with the component operators on the shared
    // variables; sampled on shared monomials up to degree 3 (the constants
    // included, which rules out diagrams with no common base operator).
    std::vector<BasisKey> samples{BasisKey::unit(p.carrier_.var_count())};
    for (const auto& name : p.shared_) {
        const auto ci = static_cast<std::size_t>(p.carrier_.var_index(name));
        std::vector<BasisKey> grown;
        for (const auto& key : samples)
            for (int d = 0; d <= 3; ++d) {
                BasisKey k = key;
                k.exponents[ci] += d;
                grown.push_back(std::move(k));
            }
        samples = std::move(grown);
    }
    for (const auto& key : samples) {
        int total = 0;
        for (auto e : key.exponents)
            total += e;
        if (total > 3)
            continue;
        const AlgebraElement m = AlgebraElement::monomial(p.carrier_, key);
        if (apply_base_operator(*p.left_carrier_op_, m) != apply_base_operator(*p.right_carrier_op_, m))
            throw DomainError("component operators disagree on the shared variables");
    }
    return p;
}

const BaseOperator& Presentation::base_operator() const {
    if (kind_ != PresentationKind::localization)
        throw DomainError("not a localization presentation");
    return *op_;
}

const TensorComponent& Presentation::left() const {
    if (kind_ != PresentationKind::tensor_product)
        throw DomainError("not a tensor-product presentation");
    return *left_;
}

const TensorComponent& Presentation::right() const {
    if (kind_ != PresentationKind::tensor_product)
        throw DomainError("not a tensor-product presentation");
    return *right_;
}

const std::vector<std::string>& Presentation::shared_vars() const {
    if (kind_ != PresentationKind::tensor_product)
        throw DomainError("not a tensor-product presentation");
    return shared_;
}

bool Presentation::key_pure_left(const BasisKey& key) const {
    for (std::size_t i = 0; i < key.exponents.size(); ++i)
        if (!carrier_var_is_left_[i] && key.exponents[i] != 0)
            return false;
    return true;
}

bool Presentation::key_pure_right(const BasisKey& key) const {
    if (key.denom_power != 0)
        return false;
    for (std::size_t i = 0; i < key.exponents.size(); ++i)
        if (!carrier_var_is_right_[i] && key.exponents[i] != 0)
            return false;
    return true;
}

bool Presentation::key_evaluable(const BasisKey& key) const {
    if (kind_ == PresentationKind::localization)
        return key.is_polynomial();
    return (key_pure_left(key) && key.is_polynomial()) || key_pure_right(key);
}

AlgebraElement Presentation::eval_p_image(const BasisKey& key) const {
    const AlgebraElement a = AlgebraElement::monomial(carrier_, key);
    if (kind_ == PresentationKind::localization)
        return apply_base_operator(*op_, a);
    if (key_pure_left(key) && key.is_polynomial())
        return apply_base_operator(*left_carrier_op_, a);
    if (key_pure_right(key))
        return apply_base_operator(*right_carrier_op_, a);
    throw InternalError("operator image requested for a non-evaluable key");
}

std::string Presentation::eval_rule_name(const BasisKey& key) const {
    if (kind_ == PresentationKind::localization)
        return "eval-base-op";
    if (key_pure_left(key) && key.is_polynomial())
        return "eval-left";
    return "eval-right";
}

BasisKey Presentation::left_key_part(const BasisKey& key) const {
    BasisKey part = BasisKey::unit(left_->alg.var_count());
    for (std::size_t i = 0; i < part.exponents.size(); ++i)
        part.exponents[i] = key.exponents[static_cast<std::size_t>(left_to_carrier_[i])];
    part.denom_power = key.denom_power;
    return part;
}

BasisKey Presentation::right_key_part(const BasisKey& key) const {
    BasisKey part = BasisKey::unit(right_->alg.var_count());
    for (std::size_t i = 0; i < part.exponents.size(); ++i) {
        const auto ci = static_cast<std::size_t>(right_to_carrier_[i]);
        part.exponents[i] = carrier_var_is_left_[ci] ? 0 : key.exponents[ci]; // shared routes left
    }
    return part;
}

AlgebraElement Presentation::inject(int side, const AlgebraElement& r) const {
    if (kind_ != PresentationKind::tensor_product)
        throw DomainError("injection requires a tensor-product presentation");
    if (side != 1 && side != 2)
        throw DomainError("tensor side must be 1 or 2");
    const TensorComponent& comp = side == 1 ? *left_ : *right_;
    const std::vector<int>& to_carrier = side == 1 ? left_to_carrier_ : right_to_carrier_;
    if (r.descriptor() != comp.alg)
        throw DomainError("element is not over the component algebra");
    AlgebraElement out(carrier_);
    for (const auto& [key, c] : r.terms()) {
        BasisKey image = BasisKey::unit(carrier_.var_count());
        for (std::size_t i = 0; i < key.exponents.size(); ++i)
            image.exponents[static_cast<std::size_t>(to_carrier[i])] = key.exponents[i];
        image.denom_power = key.denom_power;
        out.add_term(image, c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// The rewrite engine

namespace {

class Normalizer {
public:
    Normalizer(const Presentation& pres, const Guards& guards, RewriteTrace* trace)
        : pres_(pres), guards_(guards), trace_(trace) {}

    ShuffleElement run(const RBExpression& e, ReductionStrategy strategy) {
        if (e.descriptor() != pres_.carrier())
            throw DomainError("expression is not over the presentation's carrier");
        const RBExpression* work = &e;
        RBExpression oriented = e;
        if (strategy == ReductionStrategy::rb_orientation_first) {
            oriented = orient(e);
            work = &oriented;
        }
        ShuffleElement nf = norm(*work);
        scan_normal_form(nf);
        return nf;
    }

private:
    ShuffleElement zero() const { return ShuffleElement::zero(pres_.carrier(), pres_.weight()); }

    void count_step(const char* rule, const std::string& before, const std::string& after) {
        ++steps_;
        if (steps_ > guards_.max_steps) {
            if (trace_)
                trace_->lines.push_back("guard: step limit reached (partial trace above)");
            throw GuardError("rewrite step guard exceeded");
        }
        if (trace_)
            trace_->lines.push_back("step " + std::to_string(steps_) + ": " + rule + ": " + before +
                                    " => " + after);
    }

    bool tracing() const { return trace_ != nullptr; }

    std::string word_text(const TensorWord& w) const {
        return to_text(ShuffleElement::word(pres_.carrier(), pres_.weight(), w));
    }

    // Innermost-first evaluation: the free-algebra structure interprets sums,
    // scalars and products; the oriented rules fire inside reduce_P.
    ShuffleElement norm(const RBExpression& e) {
        switch (e.kind()) {
        case RBExpression::Kind::leaf:
            return embed(e.leaf_element(), pres_.weight());
        case RBExpression::Kind::scale:
            return norm(e.children().front()).scaled(e.scalar());
        case RBExpression::Kind::sum: {
            ShuffleElement acc = zero();
            for (const auto& child : e.children())
                acc = acc + norm(child);
            return acc;
        }
        case RBExpression::Kind::product: {
            ShuffleElement acc = norm(e.children().front());
            for (std::size_t i = 1; i < e.children().size(); ++i)
                acc = msh_product(acc, norm(e.children()[i]), guards_);
            return acc;
        }
        case RBExpression::Kind::p_apply:
            return reduce_P(norm(e.children().front()));
        }
        throw InternalError("unreachable expression kind");
    }

    ShuffleElement reduce_P(const ShuffleElement& u) {
        ShuffleElement acc = zero();
        for (const auto& [w, c] : u.terms())
            acc = acc + word_image(w).scaled(c);
        return acc;
    }

    // Image of P on a single canonical word under the oriented rules.
    const ShuffleElement& word_image(const TensorWord& w) {
        auto found = memo_.find(w);
        if (found != memo_.end())
            return found->second;

        ShuffleElement result = zero();
        const BasisKey& head = w.slots.front();
        if (!pres_.key_evaluable(head)) {
            if (static_cast<int>(w.length()) + 1 > guards_.max_word_len)
                throw GuardError("word-length guard exceeded in normalization");
            result.add_term(prepend_unit(w), Scalar(1));
            count_step("prepend-free", tracing() ? "P(" + word_text(w) + ")" : "",
                       tracing() ? to_text(result) : "");
        } else {
            const AlgebraElement a = AlgebraElement::monomial(pres_.carrier(), head);
            const AlgebraElement pa = pres_.eval_p_image(head);
            if (w.length() == 1) {
                result = embed(pa, pres_.weight());
                count_step(pres_.eval_rule_name(head).c_str(),
                           tracing() ? "P(" + word_text(w) + ")" : "", tracing() ? to_text(result) : "");
            } else {
                // P(a (x) u) -> P_i(a) (x) u - P(P_i(a) u) - weight * P(a u),
                // the operator image multiplying into slot 1 and re-splitting.
                const TensorWord tail{{w.slots.begin() + 1, w.slots.end()}};
                std::map<TensorWord, Scalar> tail_table{{tail, Scalar(1)}};
                result.add_terms(attach_head(pa, tail_table));

                const AlgebraElement slot1 = AlgebraElement::monomial(pres_.carrier(), w.slots[1]);
                const auto shorter = [&](const AlgebraElement& into_slot1) {
                    if (w.length() == 2)
                        return embed(into_slot1, pres_.weight());
                    const std::map<TensorWord, Scalar> rest{
                        {TensorWord{{w.slots.begin() + 2, w.slots.end()}}, Scalar(1)}};
                    ShuffleElement r = zero();
                    r.add_terms(attach_head(into_slot1, rest));
                    return r;
                };

                count_step("rb-expand", tracing() ? "P(" + word_text(w) + ")" : "", "");
                const std::size_t line = tracing() ? trace_->lines.size() - 1 : 0;
                result = result - reduce_P(shorter(mul(pa, slot1)));
                if (!pres_.weight().is_zero())
                    result = result - reduce_P(shorter(mul(a, slot1))).scaled(pres_.weight());
                if (tracing())
                    trace_->lines[line] += to_text(result);
            }
        }
        return memo_.emplace(w, std::move(result)).first->second;
    }

    // Strategy preprocessing: eliminate products of P-terms syntactically via
    // P(x)P(y) -> P(xP(y)) + P(P(x)y) + weight * P(xy) before any evaluation.
    RBExpression orient(const RBExpression& e) {
        switch (e.kind()) {
        case RBExpression::Kind::leaf:
            return e;
        case RBExpression::Kind::scale:
            return RBExpression::scale(e.scalar(), orient(e.children().front()));
        case RBExpression::Kind::sum: {
            std::vector<RBExpression> children;
            children.reserve(e.children().size());
            for (const auto& child : e.children())
                children.push_back(orient(child));
            return RBExpression::sum(std::move(children));
        }
        case RBExpression::Kind::p_apply:
            return RBExpression::apply_p(orient(e.children().front()));
        case RBExpression::Kind::product: {
            std::vector<RBExpression> factors;
            factors.reserve(e.children().size());
            for (const auto& child : e.children())
                factors.push_back(orient(child));
            return oriented_product(std::move(factors));
        }
        }
        throw InternalError("unreachable expression kind");
    }

    RBExpression oriented_product(std::vector<RBExpression> factors) {
        std::size_t i1 = factors.size();
        std::size_t i2 = factors.size();
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (factors[i].kind() != RBExpression::Kind::p_apply)
                continue;
            if (i1 == factors.size()) {
                i1 = i;
            } else {
                i2 = i;
                break;
            }
        }
        if (i2 == factors.size())
            return factors.size() == 1 ? std::move(factors.front())
                                       : RBExpression::product(std::move(factors));

        RBExpression px = factors[i1];
        RBExpression py = factors[i2];
        count_step("rb-orient", tracing() ? px.str() + "*" + py.str() : "", "");
        const std::size_t line = tracing() ? trace_->lines.size() - 1 : 0;
        std::vector<RBExpression> rest;
        for (std::size_t i = 0; i < factors.size(); ++i)
            if (i != i1 && i != i2)
                rest.push_back(std::move(factors[i]));

        const RBExpression& x = px.children().front();
        const RBExpression& y = py.children().front();
        const auto with_rest = [&](RBExpression p_node) {
            std::vector<RBExpression> fs = rest;
            fs.push_back(std::move(p_node));
            return oriented_product(std::move(fs));
        };

        std::vector<RBExpression> parts;
        parts.push_back(with_rest(RBExpression::apply_p(oriented_product({x, py}))));
        parts.push_back(with_rest(RBExpression::apply_p(oriented_product({px, y}))));
        if (!pres_.weight().is_zero())
            parts.push_back(RBExpression::scale(
                pres_.weight(), with_rest(RBExpression::apply_p(oriented_product({x, y})))));
        RBExpression out = RBExpression::sum(std::move(parts));
        if (tracing())
            trace_->lines[line] += out.str();
        return out;
    }

    // Final scan: no oriented rule applies to any word of the result.
    void scan_normal_form(const ShuffleElement& nf) const {
        for (const auto& [w, c] : nf.terms())
            for (std::size_t i = 1; i < w.slots.size(); ++i)
                if (pres_.key_evaluable(w.slots[i]))
                    throw InternalError("normal form scan failed: evaluable key past slot 0");
    }

    const Presentation& pres_;
    const Guards& guards_;
    RewriteTrace* trace_;
    long long steps_ = 0;
    std::map<TensorWord, ShuffleElement> memo_;
};

} // namespace

NormalForm normalize(const RBExpression& e, const Presentation& pres, ReductionStrategy strategy,
                     const Guards& guards, RewriteTrace* trace) {
    Normalizer engine(pres, guards, trace);
    return NormalForm{engine.run(e, strategy)};
}

EqualityVerdict equal_mod_ideal(const RBExpression& e1, const RBExpression& e2, const Presentation& pres,
                                const Guards& guards) {
    NormalForm lhs = normalize(e1, pres, ReductionStrategy::innermost, guards);
    NormalForm rhs = normalize(e2, pres, ReductionStrategy::innermost, guards);
    const EqualityStatus status =
        lhs.element == rhs.element ? EqualityStatus::proven_equal : EqualityStatus::not_proven;
    return EqualityVerdict{status, std::move(lhs), std::move(rhs)};
}

RBExpression tensor_injection(const Presentation& pres, int side, const AlgebraElement& r) {
    return RBExpression::leaf(pres.inject(side, r));
}

EqualityVerdict cross_check_localization(const LocalizedElement& u, const Guards& guards) {
    const LocalizationContext& ctx = u.context();
    const Presentation pres =
        Presentation::localization(ctx.algebra(), ctx.base_operator(), ctx.weight());
    const RBExpression e = expression_from_terms(ctx.algebra(), u.terms());
    NormalForm nf = normalize(e, pres, ReductionStrategy::innermost, guards);

    ShuffleElement expected(ctx.algebra(), ctx.weight());
    expected.add_terms(u.terms());
    const EqualityStatus status =
        nf.element == expected ? EqualityStatus::proven_equal : EqualityStatus::not_proven;
    return EqualityVerdict{status, std::move(nf), NormalForm{std::move(expected)}};
}

Lemma44Report lemma44_check(int element_samples, int expression_samples, std::uint64_t seed,
                            const Guards& guards) {
    // The shipped instance: A = Q[x] at s = x, B = Q[x,y], integral in x, weight 0.
    const UnivariatePoly s_x({std::vector<Scalar>{Scalar(0), Scalar(1)}});
    const AlgebraDescriptor laurent({"x"}, 0, s_x);
    const AlgebraDescriptor b_plain(std::vector<std::string>{"x", "y"});
    const TensorComponent left{laurent, BaseOperator::integral(0)};
    const TensorComponent right{b_plain, BaseOperator::integral(0)};
    const Presentation pres = Presentation::tensor_product({"x"}, left, right, Scalar(0));

    const AlgebraDescriptor t_alg({"x", "y"}, 0, s_x);
    const LocalizationContext t_ctx(t_alg, Scalar(0), LocalizationVariant::weight_zero,
                                    BaseOperator::integral(0));
    const LocalizedRBAlgebra target(t_ctx, guards);

    ComponentImages<LocalizedRBAlgebra> psi1{
        {carrier_inclusion(t_ctx, AlgebraElement::variable(t_alg, 0))}, invert_image(t_ctx, 1)};
    ComponentImages<LocalizedRBAlgebra> psi2{
        {carrier_inclusion(t_ctx, AlgebraElement::variable(t_alg, 0)),
         carrier_inclusion(t_ctx, AlgebraElement::variable(t_alg, 1))},
        std::nullopt};

    const auto g = [&](const RBExpression& e) { return universal_map(target, e, pres, psi1, psi2); };
    const auto h = [&](const LocalizedElement& t) {
        return expression_from_terms(pres.carrier(), t.terms());
    };

    Lemma44Report report;
    Rng rng(seed);
    SampleParams params;
    params.max_terms = 2;
    params.max_degree = 2;
    params.max_denom_power = 2;
    params.coeff_bound = 5;

    for (int i = 0; i < element_samples; ++i) {
        const LocalizedElement t = sample_localized_element(rng, t_ctx, 2, 2, params);
        ++report.element_samples;
        if (!(g(h(t)) == t))
            report.failures.push_back("g(h(t)) != t for t = " + to_text(t));
    }
    for (int i = 0; i < expression_samples; ++i) {
        const RBExpression e = sample_expression(rng, pres.carrier(), 3, params);
        ++report.expression_samples;
        const LocalizedElement image = g(e);
        const EqualityVerdict verdict = equal_mod_ideal(h(image), e, pres, guards);
        if (!verdict.proven())
            report.failures.push_back("h(g(e)) not proven equal to e for e = " + e.str());
    }
    return report;
}

} // namespace rbx
