#pragma once

#include "rbx/algebra.hpp"
#include "rbx/guards.hpp"
#include "rbx/scalar.hpp"

#include <compare>
#include <map>
#include <vector>

namespace rbx {

/// Pure tensor a_0 (x) ... (x) a_k of basis keys; the length-1 word is an
/// element of A itself.
struct TensorWord {
    std::vector<BasisKey> slots;

    std::size_t length() const { return slots.size(); }

    friend bool operator==(const TensorWord&, const TensorWord&) = default;
    // Canonical order: by length first, then slot-wise.
    friend std::strong_ordering operator<=>(const TensorWord& a, const TensorWord& b) {
        if (auto c = a.slots.size() <=> b.slots.size(); c != 0)
            return c;
        return a.slots <=> b.slots;
    }
};

/// Prepends the unit key: the free Rota-Baxter operator on words.
TensorWord prepend_unit(const TensorWord& w);

/// Element of the free commutative Rota-Baxter algebra Sh(A): a sparse
/// Q-linear combination of tensor words. The weight of the mixable shuffle
/// structure travels with the element.
class ShuffleElement {
public:
    ShuffleElement(AlgebraDescriptor alg, Scalar weight)
        : alg_(std::move(alg)), weight_(std::move(weight)) {}

    static ShuffleElement zero(const AlgebraDescriptor& alg, const Scalar& weight) {
        return ShuffleElement(alg, weight);
    }
    static ShuffleElement one(const AlgebraDescriptor& alg, const Scalar& weight);
    static ShuffleElement word(const AlgebraDescriptor& alg, const Scalar& weight, TensorWord w,
                               const Scalar& c = 1);

    const AlgebraDescriptor& descriptor() const { return alg_; }
    const Scalar& weight() const { return weight_; }
    const std::map<TensorWord, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const TensorWord& w, const Scalar& c);
    void add_terms(const std::map<TensorWord, Scalar>& terms);

    ShuffleElement operator-() const;
    ShuffleElement operator+(const ShuffleElement& rhs) const;
    ShuffleElement operator-(const ShuffleElement& rhs) const;
    ShuffleElement scaled(const Scalar& c) const;

    friend bool operator==(const ShuffleElement&, const ShuffleElement&) = default;

private:
    AlgebraDescriptor alg_;
    Scalar weight_;
    std::map<TensorWord, Scalar> terms_;
};

/// The mixable shuffle product: first slots multiply in A and the recursion
/// interleaves the tails, with the weight scaling the merged branch. This is
/// the multiplication of the free commutative Rota-Baxter algebra of that
/// weight (the quasi-shuffle for nonzero weight, the shuffle for weight 0).
ShuffleElement msh_product(const ShuffleElement& u, const ShuffleElement& v, const Guards& guards = {});

/// The free operator: linearly prepends a slot holding 1_A.
ShuffleElement shuffle_P(const ShuffleElement& u, const Guards& guards = {});

/// A as the length-1 words of Sh(A).
ShuffleElement embed(const AlgebraElement& a, const Scalar& weight);

/// A substitution on variables, extended to a map of free Rota-Baxter
/// algebras slot-wise: images of source variables are elements of the target
/// descriptor. Fractional keys are carried across only when the substitution
/// sends the denominator variable to the target's denominator variable and
/// the denominator polynomials agree.
class Substitution {
public:
    Substitution(AlgebraDescriptor source, AlgebraDescriptor target, std::vector<AlgebraElement> images);

    const AlgebraDescriptor& source() const { return source_; }
    const AlgebraDescriptor& target() const { return target_; }

    AlgebraElement apply_key(const BasisKey& key) const;
    AlgebraElement apply(const AlgebraElement& a) const;

private:
    AlgebraDescriptor source_;
    AlgebraDescriptor target_;
    std::vector<AlgebraElement> images_;
    int frac_image_var_ = -1; // target denominator variable when fractions are mappable
};

/// Slot-wise application of a substitution followed by multilinear
/// re-expansion into basis words.
ShuffleElement map_words(const Substitution& f, const ShuffleElement& u);

// Internal building block shared with the localized carrier and the rewrite
// engine: distributes the keys of head over the tail words, i.e. the
// (a_0 b_0) (x) tail step of the product recursion.
std::map<TensorWord, Scalar> attach_head(const AlgebraElement& head,
                                         const std::map<TensorWord, Scalar>& tails);

// Word-level product table used by both Sh(A) and the localized carrier.
std::map<TensorWord, Scalar> msh_word_tables(const AlgebraDescriptor& alg, const Scalar& weight,
                                             const std::map<TensorWord, Scalar>& a,
                                             const std::map<TensorWord, Scalar>& b, const Guards& guards);

} // namespace rbx
