#include <doctest.h>

#include "rbx/algebra.hpp"
#include "rbx/operators.hpp"
#include "rbx/parser.hpp"
#include "rbx/printer.hpp"
#include "rbx/sampling.hpp"
#include "rbx/targets.hpp"

using namespace rbx;

namespace {

AlgebraDescriptor laurent_x() {
    return AlgebraDescriptor({"x"}, 0, UnivariatePoly(std::vector<Scalar>{Scalar(0), Scalar(1)}));
}

AlgebraDescriptor quadratic_denominator() {
    // s = x^2 + 1
    return AlgebraDescriptor({"x"}, 0, UnivariatePoly(std::vector<Scalar>{Scalar(1), Scalar(0), Scalar(1)}));
}

AlgebraElement parse_elem(const AlgebraDescriptor& alg, const std::string& text) {
    return evaluate_plain(parse_expression(text, alg));
}

} // namespace

TEST_CASE("scalar arithmetic stays in lowest terms") {
    CHECK(Scalar(2, 4) == Scalar(1, 2));
    CHECK(Scalar(1, -2) == Scalar(-1, 2));
    CHECK((Scalar(1, 3) + Scalar(1, 6)).str() == "1/2");
    CHECK(Scalar(0).str() == "0");
    CHECK(Scalar(0).str_ratio() == "0/1");
    CHECK(Scalar::from_string("-7/21") == Scalar(-1, 3));
    CHECK(Scalar(3, 4).reciprocal() == Scalar(4, 3));
    CHECK_THROWS_AS(Scalar(1, 0), DomainError);
    CHECK_THROWS_AS(Scalar(0).reciprocal(), DomainError);
}

TEST_CASE("univariate division and monic normalization") {
    const UnivariatePoly s(std::vector<Scalar>{Scalar(1), Scalar(0), Scalar(1)}); // x^2 + 1
    const auto [q, r] = UnivariatePoly::monomial(2, 1).divmod_monic(s);
    CHECK(q == UnivariatePoly(std::vector<Scalar>{Scalar(1)}));
    CHECK(r == UnivariatePoly(std::vector<Scalar>{Scalar(-1)}));
    const UnivariatePoly scaled(std::vector<Scalar>{Scalar(2), Scalar(0), Scalar(2)});
    CHECK(scaled.monic() == s);
    CHECK_THROWS_AS(UnivariatePoly().monic(), DomainError);
}

TEST_CASE("descriptor validation") {
    CHECK_THROWS_AS(AlgebraDescriptor({"x", "x"}), DomainError);
    CHECK_THROWS_AS(AlgebraDescriptor({"P"}), DomainError);
    CHECK_THROWS_AS(AlgebraDescriptor({"s"}), DomainError);
    CHECK_THROWS_AS(AlgebraDescriptor({"x"}, 0, UnivariatePoly(std::vector<Scalar>{Scalar(2)})), DomainError);
    CHECK(laurent_x().denominator_is_variable());
    CHECK_FALSE(quadratic_denominator().denominator_is_variable());
}

TEST_CASE("mul: monomial exponent addition") {
    const auto alg = AlgebraDescriptor({"x"});
    CHECK(mul(parse_elem(alg, "x"), parse_elem(alg, "x^2")) == parse_elem(alg, "x^3"));
}

TEST_CASE("mul: cancellation in the Laurent algebra") {
    const auto alg = laurent_x();
    CHECK(mul(parse_elem(alg, "x"), parse_elem(alg, "x^-1")) == AlgebraElement::one(alg));
}

TEST_CASE("mul: denominator powers add below deg s") {
    const auto alg = quadratic_denominator();
    // (1/s) * (x/s) = x/s^2
    const auto lhs = mul(AlgebraElement::s_inverse_power(alg, 1), parse_elem(alg, "x/s"));
    CHECK(lhs == parse_elem(alg, "x/s^2"));
}

TEST_CASE("split: exact division and polynomial division") {
    const auto alg = laurent_x();
    const auto [a1, v1] = split(mul(parse_elem(alg, "x^3"), parse_elem(alg, "x^-1")));
    CHECK(a1 == parse_elem(alg, "x^2"));
    CHECK(v1.is_zero());

    const auto [a2, v2] = split(mul(parse_elem(alg, "x^2 + 1"), parse_elem(alg, "x^-1")));
    CHECK(a2 == parse_elem(alg, "x"));
    CHECK(v2 == parse_elem(alg, "x^-1"));
}

TEST_CASE("split: s-adic expansion of x^2/s for s = x^2 + 1") {
    // Long division gives x^2 = 1*s - 1, so x^2/s = 1 - 1/s; the parts sum back.
    const auto alg = quadratic_denominator();
    const auto e = mul(parse_elem(alg, "x^2"), AlgebraElement::s_inverse_power(alg, 1));
    const auto [a, v] = split(e);
    CHECK(a == AlgebraElement::one(alg));
    CHECK(v == parse_elem(alg, "1/s").scaled(Scalar(-1)));
    CHECK(a + v == e);
}

TEST_CASE("apply_base_operator: integral, zero, identities") {
    const auto alg = AlgebraDescriptor({"x"});
    const auto integral = BaseOperator::integral(0);
    CHECK(apply_base_operator(integral, parse_elem(alg, "x")) == parse_elem(alg, "1/2*x^2"));
    CHECK(apply_base_operator(BaseOperator::zero(), parse_elem(alg, "5*x^3")).is_zero());
    CHECK(apply_base_operator(BaseOperator::identity(), parse_elem(alg, "x")) == parse_elem(alg, "x"));
    CHECK(apply_base_operator(BaseOperator::neg_identity(), parse_elem(alg, "x")) ==
          parse_elem(alg, "-x"));
}

TEST_CASE("apply_base_operator: integral treats other variables as constants") {
    const auto alg = AlgebraDescriptor({"x", "y"});
    const auto integral = BaseOperator::integral(0);
    CHECK(apply_base_operator(integral, parse_elem(alg, "x*y^2")) == parse_elem(alg, "1/2*x^2*y^2"));
    // weight-0 axiom by substitution
    const BaseRBAlgebra target(alg, integral);
    CHECK(verify_rb_axiom(target, parse_elem(alg, "x*y^2"), parse_elem(alg, "y")));
}

TEST_CASE("integral is undefined on fractional parts") {
    const auto alg = laurent_x();
    CHECK_THROWS_AS(apply_base_operator(BaseOperator::integral(0), parse_elem(alg, "x^-1")),
                    OperatorUndefined);
}

TEST_CASE("verify_rb_axiom on concrete base algebras") {
    const auto alg = AlgebraDescriptor({"x"});
    const BaseRBAlgebra id_target(alg, BaseOperator::identity());
    CHECK(verify_rb_axiom(id_target, parse_elem(alg, "x"), parse_elem(alg, "x^2")));

    const BaseRBAlgebra int_target(alg, BaseOperator::integral(0));
    CHECK(verify_rb_axiom(int_target, AlgebraElement::one(alg), AlgebraElement::one(alg)));

    // Integral with weight 1 violates the identity: left x^2, right x^2 + x^2/2.
    struct WrongWeight {
        using Element = AlgebraElement;
        AlgebraDescriptor alg;
        BaseOperator op;
        Scalar weight() const { return Scalar(1); }
        Element zero() const { return AlgebraElement::zero(alg); }
        Element one() const { return AlgebraElement::one(alg); }
        Element add(const Element& x, const Element& y) const { return x + y; }
        Element mul(const Element& x, const Element& y) const { return rbx::mul(x, y); }
        Element scale(const Scalar& c, const Element& x) const { return x.scaled(c); }
        Element apply_p(const Element& x) const { return apply_base_operator(op, x); }
        bool equal(const Element& x, const Element& y) const { return x == y; }
        Element from_algebra(const AlgebraElement& a) const { return a; }
    };
    const WrongWeight wrong{alg, BaseOperator::integral(0)};
    CHECK_FALSE(verify_rb_axiom(wrong, AlgebraElement::one(alg), AlgebraElement::one(alg)));
}

TEST_CASE("split parts have disjoint supports and V is multiplicatively closed") {
    for (const auto& alg : {laurent_x(), quadratic_denominator()}) {
        Rng rng(42);
        SampleParams params;
        for (int i = 0; i < 50; ++i) {
            const auto a = sample_fraction_element(rng, alg, params);
            const auto [p, v] = split(a);
            CHECK(p + v == a);
            for (const auto& [key, c] : p.terms())
                CHECK(key.is_polynomial());
            for (const auto& [key, c] : v.terms())
                CHECK_FALSE(key.is_polynomial());

            const auto u = sample_fraction_element(rng, alg, params);
            const auto [up, uv] = split(u);
            const auto [prod_p, prod_v] = split(mul(v, uv));
            CHECK(prod_p.is_zero()); // V * V stays fractional
        }
    }
}

TEST_CASE("mul is commutative, associative and unital on sampled triples") {
    const auto alg = laurent_x();
    Rng rng(7);
    SampleParams params;
    for (int i = 0; i < 40; ++i) {
        const auto a = sample_fraction_element(rng, alg, params);
        const auto b = sample_fraction_element(rng, alg, params);
        const auto c = sample_fraction_element(rng, alg, params);
        CHECK(mul(a, b) == mul(b, a));
        CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
        CHECK(mul(a, AlgebraElement::one(alg)) == a);
    }
}

TEST_CASE("rb axiom holds for the stock operators on sampled polynomial pairs") {
    const auto alg = AlgebraDescriptor({"x"});
    Rng rng(11);
    SampleParams params;
    const auto check_target = [&](const BaseRBAlgebra& target) {
        Rng local(rng.next());
        for (int i = 0; i < 30; ++i) {
            const auto x = sample_polynomial_element(local, alg, params);
            const auto y = sample_polynomial_element(local, alg, params);
            CHECK(verify_rb_axiom(target, x, y));
        }
    };
    check_target(BaseRBAlgebra(alg, BaseOperator::zero()));
    check_target(BaseRBAlgebra(alg, BaseOperator::zero(Scalar(2))));
    check_target(BaseRBAlgebra(alg, BaseOperator::identity()));
    check_target(BaseRBAlgebra(alg, BaseOperator::neg_identity()));
    check_target(BaseRBAlgebra(alg, BaseOperator::integral(0)));
}

TEST_CASE("descriptor mismatch is a domain error") {
    const auto a = AlgebraElement::one(AlgebraDescriptor({"x"}));
    const auto b = AlgebraElement::one(AlgebraDescriptor({"y"}));
    CHECK_THROWS_AS(mul(a, b), DomainError);
    CHECK_THROWS_AS(split(a), DomainError);
}
