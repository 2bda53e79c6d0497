#include <benchmark/benchmark.h>

#include "rbx/localize.hpp"
#include "rbx/parser.hpp"
#include "rbx/presentation.hpp"
#include "rbx/sampling.hpp"
#include "rbx/targets.hpp"

using namespace rbx;

namespace {

AlgebraDescriptor laurent_x() {
    return AlgebraDescriptor({"x"}, 0, UnivariatePoly(std::vector<Scalar>{Scalar(0), Scalar(1)}));
}

void BM_msh_product(benchmark::State& state) {
    const AlgebraDescriptor alg({"x"});
    const Scalar lambda(1);
    Rng rng(1);
    SampleParams params;
    params.max_terms = 2;
    const auto u = sample_shuffle_element(rng, alg, lambda, 2, static_cast<int>(state.range(0)), params);
    const auto v = sample_shuffle_element(rng, alg, lambda, 2, static_cast<int>(state.range(0)), params);
    for (auto _ : state)
        benchmark::DoNotOptimize(msh_product(u, v));
}

void BM_p_localized(benchmark::State& state) {
    const LocalizationContext ctx(laurent_x(), Scalar(0), LocalizationVariant::weight_zero,
                                  BaseOperator::integral(0));
    Rng rng(2);
    SampleParams params;
    const auto u = sample_localized_element(rng, ctx, 3, static_cast<int>(state.range(0)), params);
    for (auto _ : state)
        benchmark::DoNotOptimize(p_localized(u));
}

void BM_normalize(benchmark::State& state) {
    const auto pres = Presentation::localization(laurent_x(), BaseOperator::integral(0), Scalar(0));
    Rng rng(3);
    SampleParams params;
    params.max_terms = 2;
    const auto e = sample_expression(rng, pres.carrier(), static_cast<int>(state.range(0)), params);
    const Guards guards{32, 10000000};
    for (auto _ : state)
        benchmark::DoNotOptimize(normalize(e, pres, ReductionStrategy::innermost, guards));
}

void BM_fraction_mul(benchmark::State& state) {
    const AlgebraDescriptor alg({"x"}, 0,
                                UnivariatePoly(std::vector<Scalar>{Scalar(1), Scalar(0), Scalar(1)})); // s = x^2+1
    Rng rng(4);
    SampleParams params;
    params.max_terms = static_cast<int>(state.range(0));
    params.max_denom_power = 4;
    const auto a = sample_fraction_element(rng, alg, params);
    const auto b = sample_fraction_element(rng, alg, params);
    for (auto _ : state)
        benchmark::DoNotOptimize(mul(a, b));
}

} // namespace

BENCHMARK(BM_msh_product)->Arg(3)->Arg(5)->Arg(7);
BENCHMARK(BM_p_localized)->Arg(3)->Arg(5);
BENCHMARK(BM_normalize)->Arg(3)->Arg(4);
BENCHMARK(BM_fraction_mul)->Arg(4)->Arg(8);
