#include "rbx/shuffle.hpp"

#include "rbx/errors.hpp"

#include <span>

namespace rbx {

TensorWord prepend_unit(const TensorWord& w) {
    if (w.slots.empty())
        throw InternalError("empty tensor word");
    TensorWord r;
    r.slots.reserve(w.slots.size() + 1);
    r.slots.push_back(BasisKey::unit(w.slots.front().exponents.size()));
    r.slots.insert(r.slots.end(), w.slots.begin(), w.slots.end());
    return r;
}

ShuffleElement ShuffleElement::one(const AlgebraDescriptor& alg, const Scalar& weight) {
    TensorWord w{{BasisKey::unit(alg.var_count())}};
    return word(alg, weight, std::move(w));
}

ShuffleElement ShuffleElement::word(const AlgebraDescriptor& alg, const Scalar& weight, TensorWord w,
                                    const Scalar& c) {
    if (w.slots.empty())
        throw DomainError("tensor words must have at least one slot");
    for (const auto& key : w.slots)
        validate_key(alg, key);
    ShuffleElement e(alg, weight);
    e.add_term(w, c);
    return e;
}

void ShuffleElement::add_term(const TensorWord& w, const Scalar& c) {
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

void ShuffleElement::add_terms(const std::map<TensorWord, Scalar>& terms) {
    for (const auto& [w, c] : terms)
        add_term(w, c);
}

ShuffleElement ShuffleElement::operator-() const {
    ShuffleElement r(alg_, weight_);
    for (const auto& [w, c] : terms_)
        r.terms_.emplace(w, -c);
    return r;
}

ShuffleElement ShuffleElement::operator+(const ShuffleElement& rhs) const {
    if (alg_ != rhs.alg_ || weight_ != rhs.weight_)
        throw DomainError("descriptor/weight mismatch in addition");
    ShuffleElement r = *this;
    r.add_terms(rhs.terms_);
    return r;
}

ShuffleElement ShuffleElement::operator-(const ShuffleElement& rhs) const {
    return *this + (-rhs);
}

ShuffleElement ShuffleElement::scaled(const Scalar& c) const {
    ShuffleElement r(alg_, weight_);
    if (c.is_zero())
        return r;
    for (const auto& [w, coeff] : terms_)
        r.terms_.emplace(w, coeff * c);
    return r;
}

std::map<TensorWord, Scalar> attach_head(const AlgebraElement& head,
                                         const std::map<TensorWord, Scalar>& tails) {
    std::map<TensorWord, Scalar> out;
    for (const auto& [key, c] : head.terms()) {
        for (const auto& [w, cw] : tails) {
            TensorWord r;
            r.slots.reserve(w.slots.size() + 1);
            r.slots.push_back(key);
            r.slots.insert(r.slots.end(), w.slots.begin(), w.slots.end());
            auto it = out.find(r);
            if (it == out.end())
                out.emplace(std::move(r), c * cw);
            else {
                it->second += c * cw;
                if (it->second.is_zero())
                    out.erase(it);
            }
        }
    }
    return out;
}

namespace {

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

AlgebraElement slot_element(const AlgebraDescriptor& alg, const BasisKey& key) {
    return AlgebraElement::monomial(alg, key);
}

TensorWord word_from(std::span<const BasisKey> slots) {
    return TensorWord{{slots.begin(), slots.end()}};
}

TensorWord word_with_unit(std::span<const BasisKey> slots, std::size_t var_count) {
    TensorWord r;
    r.slots.reserve(slots.size() + 1);
    r.slots.push_back(BasisKey::unit(var_count));
    r.slots.insert(r.slots.end(), slots.begin(), slots.end());
    return r;
}

// Product of two pure words per the defining recursion: base cases multiply
// the first slots and append the longer tail; the recursive case produces the
// two interleavings-of-tails branches plus the weight-scaled merged branch.
std::map<TensorWord, Scalar> msh_words(const AlgebraDescriptor& alg, const Scalar& weight,
                                       std::span<const BasisKey> a, std::span<const BasisKey> b) {
    const AlgebraElement head = mul(slot_element(alg, a.front()), slot_element(alg, b.front()));
    if (a.size() == 1 && b.size() == 1) {
        std::map<TensorWord, Scalar> out;
        for (const auto& [key, c] : head.terms())
            out.emplace(TensorWord{{key}}, c);
        return out;
    }
    if (a.size() == 1) {
        std::map<TensorWord, Scalar> tail;
        tail.emplace(word_from(b.subspan(1)), Scalar(1));
        return attach_head(head, tail);
    }
    if (b.size() == 1) {
        std::map<TensorWord, Scalar> tail;
        tail.emplace(word_from(a.subspan(1)), Scalar(1));
        return attach_head(head, tail);
    }

    const auto a_tail = a.subspan(1);
    const auto b_tail = b.subspan(1);
    const TensorWord b_tail_unit = word_with_unit(b_tail, alg.var_count());
    const TensorWord a_tail_unit = word_with_unit(a_tail, alg.var_count());

    std::map<TensorWord, Scalar> tails = msh_words(alg, weight, a_tail, b_tail_unit.slots);
    accumulate(tails, msh_words(alg, weight, a_tail_unit.slots, b_tail), Scalar(1));
    if (!weight.is_zero())
        accumulate(tails, msh_words(alg, weight, a_tail, b_tail), weight);
    return attach_head(head, tails);
}

} // namespace

std::map<TensorWord, Scalar> msh_word_tables(const AlgebraDescriptor& alg, const Scalar& weight,
                                             const std::map<TensorWord, Scalar>& a,
                                             const std::map<TensorWord, Scalar>& b, const Guards& guards) {
    std::map<TensorWord, Scalar> out;
    for (const auto& [wa, ca] : a) {
        for (const auto& [wb, cb] : b) {
            if (static_cast<int>(wa.length() + wb.length()) - 1 > guards.max_word_len)
                throw GuardError("word-length guard exceeded in shuffle product");
            accumulate(out, msh_words(alg, weight, wa.slots, wb.slots), ca * cb);
        }
    }
    return out;
}

ShuffleElement msh_product(const ShuffleElement& u, const ShuffleElement& v, const Guards& guards) {
    if (u.descriptor() != v.descriptor() || u.weight() != v.weight())
        throw DomainError("descriptor/weight mismatch in shuffle product");
    ShuffleElement r(u.descriptor(), u.weight());
    r.add_terms(msh_word_tables(u.descriptor(), u.weight(), u.terms(), v.terms(), guards));
    return r;
}

ShuffleElement shuffle_P(const ShuffleElement& u, const Guards& guards) {
    ShuffleElement r(u.descriptor(), u.weight());
    for (const auto& [w, c] : u.terms()) {
        if (static_cast<int>(w.length()) + 1 > guards.max_word_len)
            throw GuardError("word-length guard exceeded in operator application");
        r.add_term(prepend_unit(w), c);
    }
    return r;
}

ShuffleElement embed(const AlgebraElement& a, const Scalar& weight) {
    ShuffleElement r(a.descriptor(), weight);
    for (const auto& [key, c] : a.terms())
        r.add_term(TensorWord{{key}}, c);
    return r;
}

Substitution::Substitution(AlgebraDescriptor source, AlgebraDescriptor target,
                           std::vector<AlgebraElement> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    if (images_.size() != source_.var_count())
        throw DomainError("substitution needs one image per source variable");
    for (const auto& img : images_)
        if (img.descriptor() != target_)
            throw DomainError("substitution image over the wrong descriptor");
    if (source_.has_denominator()) {
        // Fractions only carry across when the denominator variable maps to a
        // plain variable carrying the same denominator polynomial.
        const auto& img = images_[static_cast<std::size_t>(source_.denom_var())];
        if (target_.has_denominator() && img.terms().size() == 1) {
            const auto& [key, c] = *img.terms().begin();
            const auto tv = static_cast<std::size_t>(target_.denom_var());
            if (c.is_one() && key.is_polynomial() && key.exponents[tv] == 1 && !key.is_unit()) {
                bool plain = true;
                for (std::size_t i = 0; i < key.exponents.size(); ++i)
                    if (i != tv && key.exponents[i] != 0)
                        plain = false;
                if (plain && source_.denom_poly() == target_.denom_poly())
                    frac_image_var_ = target_.denom_var();
            }
        }
    }
}

AlgebraElement Substitution::apply_key(const BasisKey& key) const {
    if (key.denom_power > 0 && frac_image_var_ < 0)
        throw DomainError("substitution does not preserve the denominator");
    AlgebraElement out = AlgebraElement::one(target_);
    for (std::size_t i = 0; i < images_.size(); ++i) {
        const bool direct_denom_slot = frac_image_var_ >= 0 && source_.has_denominator() &&
                                       static_cast<int>(i) == source_.denom_var();
        if (direct_denom_slot)
            continue; // mapped key-to-key below, together with the denominator power
        if (key.exponents[i] != 0)
            out = mul(out, pow(images_[i], key.exponents[i]));
    }
    if (frac_image_var_ >= 0 && source_.has_denominator()) {
        const auto sv = static_cast<std::size_t>(source_.denom_var());
        if (key.exponents[sv] != 0 || key.denom_power > 0) {
            BasisKey image = BasisKey::unit(target_.var_count());
            image.exponents[static_cast<std::size_t>(frac_image_var_)] = key.exponents[sv];
            image.denom_power = key.denom_power;
            out = mul(out, AlgebraElement::monomial(target_, std::move(image)));
        }
    }
    return out;
}

AlgebraElement Substitution::apply(const AlgebraElement& a) const {
    if (a.descriptor() != source_)
        throw DomainError("substitution applied to an element of the wrong algebra");
    AlgebraElement out(target_);
    for (const auto& [key, c] : a.terms())
        out = out + apply_key(key).scaled(c);
    return out;
}

ShuffleElement map_words(const Substitution& f, const ShuffleElement& u) {
    if (u.descriptor() != f.source())
        throw DomainError("map_words applied to an element of the wrong algebra");
    ShuffleElement out(f.target(), u.weight());
    for (const auto& [w, c] : u.terms()) {
        // Slot-wise image, then multilinear re-expansion into basis words.
        std::map<TensorWord, Scalar> words;
        words.emplace(TensorWord{}, c);
        for (auto slot = w.slots.rbegin(); slot != w.slots.rend(); ++slot) {
            const AlgebraElement image = f.apply_key(*slot);
            words = attach_head(image, words);
        }
        out.add_terms(words);
    }
    return out;
}

} // namespace rbx
