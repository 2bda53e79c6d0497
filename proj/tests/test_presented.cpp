#include <doctest.h>

#include "rbx/parser.hpp"
#include "rbx/presentation.hpp"
#include "rbx/printer.hpp"
#include "rbx/sampling.hpp"

using namespace rbx;

namespace {

AlgebraDescriptor laurent_x() {
    return AlgebraDescriptor({"x"}, 0, UnivariatePoly(std::vector<Scalar>{Scalar(0), Scalar(1)}));
}

AlgebraDescriptor quadratic_s_alg() {
    return AlgebraDescriptor({"x"}, 0, UnivariatePoly(std::vector<Scalar>{Scalar(1), Scalar(0), Scalar(1)}));
}

Presentation laurent_integral_pres() {
    return Presentation::localization(laurent_x(), BaseOperator::integral(0), Scalar(0));
}

LocalizationContext laurent_integral_ctx() {
    return LocalizationContext(laurent_x(), Scalar(0), LocalizationVariant::weight_zero,
                               BaseOperator::integral(0));
}

RBExpression parse_over(const std::string& text, const AlgebraDescriptor& alg) {
    return parse_expression(text, alg);
}

ShuffleElement nf_of(const std::string& text, const Presentation& pres,
                     ReductionStrategy strategy = ReductionStrategy::innermost) {
    return normalize(parse_over(text, pres.carrier()), pres, strategy).element;
}

} // namespace

TEST_CASE("normalize: evaluation rule on a polynomial argument") {
    const auto pres = laurent_integral_pres();
    CHECK(to_text(nf_of("P(x)", pres)) == "1/2*x^2");
}

TEST_CASE("normalize: split argument, one rule each") {
    const auto pres = laurent_integral_pres();
    const auto nf = nf_of("P(x + x^-1)", pres);
    CHECK(nf == nf_of("1/2*x^2 + T[1, x^-1]", pres));
    CHECK(to_text(nf) == "1/2*x^2 + T[1, x^-1]");
}

TEST_CASE("normalize: two reduction orders agree on P(x)*P(x)") {
    const auto pres = laurent_integral_pres();
    const auto inner = nf_of("P(x)*P(x)", pres, ReductionStrategy::innermost);
    const auto oriented = nf_of("P(x)*P(x)", pres, ReductionStrategy::rb_orientation_first);
    CHECK(to_text(inner) == "1/4*x^4");
    CHECK(inner == oriented);
}

TEST_CASE("normalize is idempotent on re-lifted normal forms") {
    const auto pres = laurent_integral_pres();
    Rng rng(900);
    SampleParams params;
    params.max_terms = 2;
    for (int i = 0; i < 30; ++i) {
        const auto e = sample_expression(rng, pres.carrier(), 3, params);
        const auto nf = normalize(e, pres).element;
        const auto relifted = expression_from_terms(pres.carrier(), nf.terms());
        CHECK(normalize(relifted, pres).element == nf);
    }
}

TEST_CASE("normalize agrees with direct evaluation in the localized carrier") {
    const auto pres = laurent_integral_pres();
    const auto ctx = laurent_integral_ctx();
    const LocalizedRBAlgebra model(ctx, Guards{32, 1000000});
    Rng rng(901);
    SampleParams params;
    params.max_terms = 2;
    for (int i = 0; i < 50; ++i) {
        const auto e = sample_expression(rng, pres.carrier(), 4, params);
        const auto nf = normalize(e, pres, ReductionStrategy::innermost, Guards{32, 1000000}).element;
        const auto direct = evaluate_expression(model, e);
        CHECK(nf.terms() == direct.terms());
    }
}

TEST_CASE("normalize agrees with the carrier model at general weight") {
    const auto pres = Presentation::localization(laurent_x(), BaseOperator::identity(), Scalar(-1));
    const LocalizationContext ctx(laurent_x(), Scalar(-1), LocalizationVariant::general_weight,
                                  BaseOperator::identity());
    const LocalizedRBAlgebra model(ctx, Guards{32, 1000000});
    Rng rng(910);
    SampleParams params;
    params.max_terms = 2;
    for (int i = 0; i < 40; ++i) {
        const auto e = sample_expression(rng, pres.carrier(), 3, params);
        const auto nf = normalize(e, pres, ReductionStrategy::innermost, Guards{32, 1000000}).element;
        CHECK(nf.terms() == evaluate_expression(model, e).terms());
        const auto oriented =
            normalize(e, pres, ReductionStrategy::rb_orientation_first, Guards{32, 1000000}).element;
        CHECK(nf == oriented);
    }
}

TEST_CASE("normalize agrees with the carrier model for a quadratic denominator") {
    const auto pres =
        Presentation::localization(quadratic_s_alg(), BaseOperator::integral(0), Scalar(0));
    const LocalizationContext ctx(quadratic_s_alg(), Scalar(0), LocalizationVariant::weight_zero,
                                  BaseOperator::integral(0));
    const LocalizedRBAlgebra model(ctx, Guards{32, 1000000});
    Rng rng(911);
    SampleParams params;
    params.max_terms = 2;
    params.max_degree = 2;
    for (int i = 0; i < 30; ++i) {
        const auto e = sample_expression(rng, pres.carrier(), 3, params);
        const auto nf = normalize(e, pres, ReductionStrategy::innermost, Guards{32, 1000000}).element;
        CHECK(nf.terms() == evaluate_expression(model, e).terms());
    }
}

TEST_CASE("equal_mod_ideal: spec examples") {
    const auto pres = laurent_integral_pres();
    CHECK(equal_mod_ideal(parse_over("P(x)", pres.carrier()), parse_over("1/2*x^2", pres.carrier()),
                          pres)
              .proven());
    // P(a) - 1 (x) a applies only to polynomial a, so x^-1 is irreducible:
    // both sides normalize to the word 1 (x) x^-1.
    CHECK(equal_mod_ideal(parse_over("P(x^-1)", pres.carrier()),
                          parse_over("T[1, x^-1]", pres.carrier()), pres)
              .proven());
    const auto verdict = equal_mod_ideal(parse_over("x", pres.carrier()),
                                         parse_over("x^-1", pres.carrier()), pres);
    CHECK_FALSE(verdict.proven());
    CHECK(verdict.status == EqualityStatus::not_proven);
}

TEST_CASE("equal_mod_ideal is reflexive, symmetric and congruent on proven pairs") {
    const auto pres = laurent_integral_pres();
    Rng rng(902);
    SampleParams params;
    params.max_terms = 2;
    for (int i = 0; i < 15; ++i) {
        const auto e1 = sample_expression(rng, pres.carrier(), 3, params);
        CHECK(equal_mod_ideal(e1, e1, pres).proven());
        // a pair known to be equal: e and its normal form re-lifted
        const auto nf = normalize(e1, pres).element;
        const auto e2 = expression_from_terms(pres.carrier(), nf.terms());
        CHECK(equal_mod_ideal(e1, e2, pres).proven());
        CHECK(equal_mod_ideal(e2, e1, pres).proven());
        const auto f = sample_expression(rng, pres.carrier(), 2, params);
        CHECK(equal_mod_ideal(RBExpression::sum({e1, f}), RBExpression::sum({e2, f}), pres).proven());
        CHECK(equal_mod_ideal(RBExpression::product({e1, f}), RBExpression::product({e2, f}), pres)
                  .proven());
        CHECK(equal_mod_ideal(RBExpression::apply_p(e1), RBExpression::apply_p(e2), pres).proven());
    }
}

TEST_CASE("zero-operator localization presentation annihilates polynomial P-arguments") {
    const auto pres = Presentation::localization(laurent_x(), BaseOperator::zero(), Scalar(0));
    CHECK(nf_of("P(x^2)", pres).is_zero());
    CHECK(to_text(nf_of("P(x^-1)", pres)) == "T[1, x^-1]");
}

TEST_CASE("tensor_base: pushouts of variable inclusions") {
    const auto qx = AlgebraDescriptor({"x"});
    const auto qy = AlgebraDescriptor({"y"});
    const auto qxy = AlgebraDescriptor({"x", "y"});
    const auto integral = BaseOperator::integral(0);

    CHECK(tensor_base({qx, integral}, {qxy, integral}, {"x"}) == qxy);
    CHECK(tensor_base({qx, BaseOperator::zero()}, {qy, BaseOperator::zero()}, {}) == qxy);

    const auto combined = tensor_base({laurent_x(), integral}, {qxy, integral}, {"x"});
    CHECK(combined.variables() == std::vector<std::string>{"x", "y"});
    CHECK(combined.has_denominator());
    CHECK(combined.denominator_is_variable());

    // dimension count on truncations: basis pairs (left basis) x {y^m}
    // up to x-degree 2, denominator power 2, y-degree 2:
    // left keys {x^0,x^1,x^2,1/x,1/x^2} times {1,y,y^2} = 15 valid carrier keys
    int count = 0;
    for (int e = 0; e <= 2; ++e)
        for (int k = 0; k <= 2; ++k)
            for (int m = 0; m <= 2; ++m) {
                if (e > 0 && k > 0)
                    continue; // not canonical: numerator degree must sit below deg s
                if (e == 0 && k == 0 && m == 0) {
                    ++count; // unit
                    continue;
                }
                BasisKey key = BasisKey::unit(2);
                key.exponents[0] = e;
                key.exponents[1] = m;
                key.denom_power = k;
                validate_key(combined, key);
                ++count;
            }
    CHECK(count == 15);

    CHECK_THROWS_AS(tensor_base({qx, integral}, {qx, integral}, {}), DomainError);
}

TEST_CASE("tensor presentation rejects mismatched operators on shared variables") {
    const auto qx = AlgebraDescriptor({"x"});
    const auto qxy = AlgebraDescriptor({"x", "y"});
    CHECK_THROWS_AS(Presentation::tensor_product({"x"}, {qx, BaseOperator::integral(0)},
                                                 {qxy, BaseOperator::zero()}, Scalar(0)),
                    DomainError);
    // integral components over a shared-less diagram have no common base operator
    const auto qy = AlgebraDescriptor({"y"});
    CHECK_THROWS_AS(Presentation::tensor_product({}, {qx, BaseOperator::integral(0)},
                                                 {qy, BaseOperator::integral(0)}, Scalar(0)),
                    DomainError);
}

namespace {

Presentation shipped_tensor() {
    return Presentation::tensor_product({"x"}, {laurent_x(), BaseOperator::integral(0)},
                                        {AlgebraDescriptor({"x", "y"}), BaseOperator::integral(0)},
                                        Scalar(0));
}

} // namespace

TEST_CASE("tensor injections agree on the shared subalgebra") {
    const auto pres = shipped_tensor();
    const auto qx_loc = laurent_x();
    const auto qxy = AlgebraDescriptor({"x", "y"});

    // constants agree
    const auto c1 = tensor_injection(pres, 1, evaluate_plain(parse_over("7", qx_loc)));
    const auto c2 = tensor_injection(pres, 2, evaluate_plain(parse_over("7", qxy)));
    CHECK(equal_mod_ideal(c1, c2, pres).proven());

    // k1(x) and k2(x) are identified by the pushout
    const auto x1 = tensor_injection(pres, 1, evaluate_plain(parse_over("x", qx_loc)));
    const auto x2 = tensor_injection(pres, 2, evaluate_plain(parse_over("x", qxy)));
    CHECK(equal_mod_ideal(x1, x2, pres).proven());

    // sampled shared polynomials
    Rng rng(903);
    SampleParams params;
    for (int i = 0; i < 20; ++i) {
        const auto shared = sample_polynomial_element(rng, AlgebraDescriptor({"x"}), params);
        const Substitution to_left(AlgebraDescriptor({"x"}), qx_loc,
                                   {evaluate_plain(parse_over("x", qx_loc))});
        const Substitution to_right(AlgebraDescriptor({"x"}), qxy,
                                    {evaluate_plain(parse_over("x", qxy))});
        const auto k1 = tensor_injection(pres, 1, to_left.apply(shared));
        const auto k2 = tensor_injection(pres, 2, to_right.apply(shared));
        CHECK(equal_mod_ideal(k1, k2, pres).proven());
    }
}

TEST_CASE("universal_map: psi_{1,2} . k_i = psi_i into the localized target") {
    const auto pres = shipped_tensor();
    const AlgebraDescriptor t_alg({"x", "y"}, 0, UnivariatePoly(std::vector<Scalar>{Scalar(0), Scalar(1)}));
    const LocalizationContext t_ctx(t_alg, Scalar(0), LocalizationVariant::weight_zero,
                                    BaseOperator::integral(0));
    const LocalizedRBAlgebra target(t_ctx);

    const ComponentImages<LocalizedRBAlgebra> psi1{
        {carrier_inclusion(t_ctx, AlgebraElement::variable(t_alg, 0))}, invert_image(t_ctx, 1)};
    const ComponentImages<LocalizedRBAlgebra> psi2{
        {carrier_inclusion(t_ctx, AlgebraElement::variable(t_alg, 0)),
         carrier_inclusion(t_ctx, AlgebraElement::variable(t_alg, 1))},
        std::nullopt};

    // e = k1(x) evaluates to psi1(x)
    const auto k1x = tensor_injection(pres, 1, AlgebraElement::variable(pres.left().alg, 0));
    CHECK(universal_map(target, k1x, pres, psi1, psi2) == psi1.var_images[0]);

    // e = P(k1(x)) evaluates to the integral image x^2/2
    CHECK(universal_map(target, RBExpression::apply_p(k1x), pres, psi1, psi2) ==
          carrier_inclusion(t_ctx, evaluate_plain(parse_over("1/2*x^2", t_alg))));

    // sampled component elements on both sides
    Rng rng(904);
    SampleParams params;
    params.max_denom_power = 1;
    for (int i = 0; i < 15; ++i) {
        const auto left = sample_fraction_element(rng, pres.left().alg, params);
        const auto e1 = tensor_injection(pres, 1, left);
        const auto expected1 = extend_to_localization(
            target, LocalizationContext(pres.left().alg, Scalar(0), LocalizationVariant::weight_zero,
                                        BaseOperator::integral(0)),
            psi1.var_images, *psi1.s_inverse, carrier_inclusion(laurent_integral_ctx(), left));
        CHECK(universal_map(target, e1, pres, psi1, psi2) == expected1);

        const auto right = sample_polynomial_element(rng, pres.right().alg, params);
        const auto e2 = tensor_injection(pres, 2, right);
        const auto expected2 =
            eval_element(target, std::span<const LocalizedElement>(psi2.var_images), nullptr, right);
        CHECK(universal_map(target, e2, pres, psi1, psi2) == expected2);
    }
}

TEST_CASE("universal_map with the canonical injections reproduces normalize") {
    const auto pres = shipped_tensor();
    const AlgebraDescriptor t_alg({"x", "y"}, 0, UnivariatePoly(std::vector<Scalar>{Scalar(0), Scalar(1)}));
    const LocalizationContext t_ctx(t_alg, Scalar(0), LocalizationVariant::weight_zero,
                                    BaseOperator::integral(0));
    const LocalizedRBAlgebra target(t_ctx);
    const ComponentImages<LocalizedRBAlgebra> psi1{
        {carrier_inclusion(t_ctx, AlgebraElement::variable(t_alg, 0))}, invert_image(t_ctx, 1)};
    const ComponentImages<LocalizedRBAlgebra> psi2{
        {carrier_inclusion(t_ctx, AlgebraElement::variable(t_alg, 0)),
         carrier_inclusion(t_ctx, AlgebraElement::variable(t_alg, 1))},
        std::nullopt};

    Rng rng(905);
    SampleParams params;
    params.max_terms = 2;
    for (int i = 0; i < 20; ++i) {
        const auto e = sample_expression(rng, pres.carrier(), 3, params);
        const auto nf = normalize(e, pres, ReductionStrategy::innermost, Guards{32, 1000000}).element;
        const auto direct = universal_map(target, e, pres, psi1, psi2);
        CHECK(nf.terms() == direct.terms());
    }
}

TEST_CASE("cross_check_localization on spec examples") {
    const auto ctx = laurent_integral_ctx();
    const auto x_inv = AlgebraElement::s_inverse_power(ctx.algebra(), 1);

    CHECK(cross_check_localization(p_localized(carrier_inclusion(ctx, x_inv))).proven());
    CHECK(cross_check_localization(structure_map(ctx, AlgebraElement::variable(ctx.algebra(), 0)))
              .proven());

    // u = P(x (x) x^-1) against normalize(P(x*P(x^-1)))
    TensorWord w;
    w.slots.push_back(AlgebraElement::variable(ctx.algebra(), 0).terms().begin()->first);
    w.slots.push_back(x_inv.terms().begin()->first);
    const auto u = p_localized(LocalizedElement::word(ctx, w));
    CHECK(cross_check_localization(u).proven());

    const auto pres = laurent_integral_pres();
    const auto nf = normalize(parse_over("P(x*P(x^-1))", pres.carrier()), pres).element;
    CHECK(nf.terms() == u.terms());
}

TEST_CASE("cross_check_localization on sampled carriers, all variants") {
    const auto contexts = std::vector<LocalizationContext>{
        laurent_integral_ctx(),
        LocalizationContext(laurent_x(), Scalar(-1), LocalizationVariant::general_weight,
                            BaseOperator::identity()),
        LocalizationContext(laurent_x(), Scalar(0), LocalizationVariant::zero_operator_quotient,
                            BaseOperator::zero()),
    };
    std::uint64_t seed = 906;
    for (const auto& ctx : contexts) {
        Rng rng(seed++);
        SampleParams params;
        params.max_terms = 2;
        for (int i = 0; i < 15; ++i) {
            const auto u = sample_localized_element(rng, ctx, 2, 3, params);
            CHECK(cross_check_localization(u).proven());
        }
    }
}

TEST_CASE("lemma44_check round-trips on the shipped instance") {
    const auto report = lemma44_check(10, 10, 907, Guards{32, 1000000});
    for (const auto& f : report.failures)
        MESSAGE(f);
    CHECK(report.ok());
    CHECK(report.element_samples == 10);
    CHECK(report.expression_samples == 10);
}

TEST_CASE("localization/tensor compatibility on named elements") {
    // g: presented -> explicit localized carrier of Q[x,y] at x;
    // h: carrier words -> expressions via the reconstruction identity.
    const auto pres = shipped_tensor();
    const AlgebraDescriptor t_alg({"x", "y"}, 0, UnivariatePoly(std::vector<Scalar>{Scalar(0), Scalar(1)}));
    const LocalizationContext t_ctx(t_alg, Scalar(0), LocalizationVariant::weight_zero,
                                    BaseOperator::integral(0));
    const LocalizedRBAlgebra target(t_ctx);
    const ComponentImages<LocalizedRBAlgebra> psi1{
        {carrier_inclusion(t_ctx, AlgebraElement::variable(t_alg, 0))}, invert_image(t_ctx, 1)};
    const ComponentImages<LocalizedRBAlgebra> psi2{
        {carrier_inclusion(t_ctx, AlgebraElement::variable(t_alg, 0)),
         carrier_inclusion(t_ctx, AlgebraElement::variable(t_alg, 1))},
        std::nullopt};
    const auto g = [&](const RBExpression& e) { return universal_map(target, e, pres, psi1, psi2); };
    const auto h = [&](const LocalizedElement& t) {
        return expression_from_terms(pres.carrier(), t.terms());
    };

    const auto roundtrips = [&](const LocalizedElement& t) { return g(h(t)) == t; };
    CHECK(roundtrips(carrier_inclusion(t_ctx, AlgebraElement::s_inverse_power(t_alg, 1))));
    CHECK(roundtrips(structure_map(t_ctx, AlgebraElement::variable(t_alg, 1))));

    TensorWord w;
    w.slots.push_back(AlgebraElement::variable(t_alg, 1).terms().begin()->first);
    w.slots.push_back(AlgebraElement::s_inverse_power(t_alg, 1).terms().begin()->first);
    CHECK(roundtrips(p_localized(LocalizedElement::word(t_ctx, w))));
}

TEST_CASE("rewrite traces record rule applications") {
    const auto pres = laurent_integral_pres();
    RewriteTrace trace;
    normalize(parse_over("P(x*P(x^-1))", pres.carrier()), pres, ReductionStrategy::innermost, Guards{},
              &trace);
    CHECK_FALSE(trace.lines.empty());
    CHECK(trace.lines.front().rfind("step 1: ", 0) == 0);
}

TEST_CASE("step guard trips with a clean error") {
    const auto pres = laurent_integral_pres();
    Guards tight;
    tight.max_steps = 1;
    CHECK_THROWS_AS(normalize(parse_over("P(x*P(x^-1)) + P(x^2*P(x^-2))", pres.carrier()), pres,
                              ReductionStrategy::innermost, tight),
                    GuardError);
}
