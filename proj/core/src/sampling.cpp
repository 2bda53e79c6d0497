#include "rbx/sampling.hpp"

namespace rbx {

std::uint64_t Rng::next() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t n) {
    return n == 0 ? 0 : next() % n;
}

int Rng::range(int lo, int hi) {
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
}

Scalar Rng::coefficient(int bound) {
    const int c = range(1, bound);
    return Scalar(below(2) == 0 ? c : -c);
}

BasisKey sample_poly_key(Rng& rng, const AlgebraDescriptor& alg, int max_degree) {
    BasisKey key = BasisKey::unit(alg.var_count());
    for (auto& e : key.exponents)
        e = rng.range(0, max_degree);
    return key;
}

BasisKey sample_fraction_key(Rng& rng, const AlgebraDescriptor& alg, int max_degree, int max_denom_power) {
    BasisKey key = sample_poly_key(rng, alg, max_degree);
    key.denom_power = rng.range(1, max_denom_power);
    key.exponents[static_cast<std::size_t>(alg.denom_var())] = rng.range(0, alg.denom_degree() - 1);
    return key;
}

AlgebraElement sample_polynomial_element(Rng& rng, const AlgebraDescriptor& alg, const SampleParams& p) {
    AlgebraElement e(alg);
    const int n = rng.range(1, p.max_terms);
    for (int i = 0; i < n; ++i)
        e.add_term(sample_poly_key(rng, alg, p.max_degree), rng.coefficient(p.coeff_bound));
    return e;
}

AlgebraElement sample_fraction_element(Rng& rng, const AlgebraDescriptor& alg, const SampleParams& p) {
    AlgebraElement e(alg);
    const int n = rng.range(1, p.max_terms);
    for (int i = 0; i < n; ++i) {
        const bool fractional = rng.below(2) == 0;
        const BasisKey key = fractional ? sample_fraction_key(rng, alg, p.max_degree, p.max_denom_power)
                                        : sample_poly_key(rng, alg, p.max_degree);
        e.add_term(key, rng.coefficient(p.coeff_bound));
    }
    return e;
}

ShuffleElement sample_shuffle_element(Rng& rng, const AlgebraDescriptor& alg, const Scalar& weight,
                                      int max_words, int max_len, const SampleParams& p) {
    ShuffleElement e(alg, weight);
    const int n = rng.range(1, max_words);
    for (int i = 0; i < n; ++i) {
        TensorWord w;
        const int len = rng.range(1, max_len);
        for (int j = 0; j < len; ++j)
            w.slots.push_back(sample_poly_key(rng, alg, p.max_degree));
        e.add_term(w, rng.coefficient(p.coeff_bound));
    }
    return e;
}

LocalizedElement sample_localized_element(Rng& rng, const LocalizationContext& ctx, int max_words,
                                          int max_len, const SampleParams& p) {
    const AlgebraDescriptor& alg = ctx.algebra();
    LocalizedElement e(ctx);
    const int n = rng.range(1, max_words);
    for (int i = 0; i < n; ++i) {
        TensorWord w;
        const int len = rng.range(1, max_len);
        const bool frac_head = rng.below(2) == 0;
        w.slots.push_back(frac_head ? sample_fraction_key(rng, alg, p.max_degree, p.max_denom_power)
                                    : sample_poly_key(rng, alg, p.max_degree));
        for (int j = 1; j < len; ++j)
            w.slots.push_back(sample_fraction_key(rng, alg, p.max_degree, p.max_denom_power));
        e.add_term(w, rng.coefficient(p.coeff_bound));
    }
    return e;
}

RBExpression sample_expression(Rng& rng, const AlgebraDescriptor& alg, int depth, const SampleParams& p) {
    if (depth <= 0)
        return RBExpression::leaf(sample_fraction_element(rng, alg, p));
    switch (rng.below(5)) {
    case 0:
        return RBExpression::leaf(sample_fraction_element(rng, alg, p));
    case 1:
        return RBExpression::sum(
            {sample_expression(rng, alg, depth - 1, p), sample_expression(rng, alg, depth - 1, p)});
    case 2:
        return RBExpression::scale(rng.coefficient(p.coeff_bound),
                                   sample_expression(rng, alg, depth - 1, p));
    case 3:
        return RBExpression::product(
            {sample_expression(rng, alg, depth - 1, p), sample_expression(rng, alg, depth - 1, p)});
    default:
        return RBExpression::apply_p(sample_expression(rng, alg, depth - 1, p));
    }
}

} // namespace rbx
