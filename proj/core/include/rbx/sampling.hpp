#pragma once

#include "rbx/algebra.hpp"
#include "rbx/expression.hpp"
#include "rbx/localize.hpp"
#include "rbx/shuffle.hpp"

#include <cstdint>

namespace rbx {

/// Deterministic 64-bit generator (splitmix64). Unlike the <random>
/// distributions, the stream is identical on every platform, which the seeded
/// verification drivers and golden files rely on.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    std::uint64_t below(std::uint64_t n); // uniform in [0, n)
    int range(int lo, int hi);            // uniform in [lo, hi]
    /// Nonzero integer scalar in [-bound, bound].
    Scalar coefficient(int bound);

private:
    std::uint64_t state_;
};

struct SampleParams {
    int max_terms = 3;
    int max_degree = 3;
    int max_denom_power = 2;
    int coeff_bound = 5;
};

BasisKey sample_poly_key(Rng& rng, const AlgebraDescriptor& alg, int max_degree);
/// A strictly fractional canonical key (denominator power >= 1).
BasisKey sample_fraction_key(Rng& rng, const AlgebraDescriptor& alg, int max_degree, int max_denom_power);

AlgebraElement sample_polynomial_element(Rng& rng, const AlgebraDescriptor& alg, const SampleParams& p);
/// Mixes polynomial and fractional keys.
AlgebraElement sample_fraction_element(Rng& rng, const AlgebraDescriptor& alg, const SampleParams& p);

/// Words with polynomial slots, up to the given length.
ShuffleElement sample_shuffle_element(Rng& rng, const AlgebraDescriptor& alg, const Scalar& weight,
                                      int max_words, int max_len, const SampleParams& p);

/// Carrier words: arbitrary first slot, fractional later slots.
LocalizedElement sample_localized_element(Rng& rng, const LocalizationContext& ctx, int max_words,
                                          int max_len, const SampleParams& p);

/// Random expression over S^-1 A leaves with bounded depth.
RBExpression sample_expression(Rng& rng, const AlgebraDescriptor& alg, int depth, const SampleParams& p);

} // namespace rbx
