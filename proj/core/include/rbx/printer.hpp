#pragma once

#include "rbx/algebra.hpp"
#include "rbx/localize.hpp"
#include "rbx/shuffle.hpp"

#include <string>

namespace rbx {

// Canonical text forms. These strings are the golden-file contract of the
// CLI: terms appear in canonical order, separated by " + " / " - ", with a
// leading "-" on a negative first term and "0" for zero elements.
//
// A term reads c*x^i*y^j with the coefficient omitted when it is 1 and the
// key nontrivial. Fractional keys print as x^-k when the denominator is the
// variable itself, and with a trailing /s^k otherwise.

std::string key_text(const AlgebraDescriptor& alg, const BasisKey& key);
std::string to_text(const AlgebraElement& a);

// Words of length one print as plain elements; longer words as
// T[slot0, slot1, ...].
std::string to_text(const ShuffleElement& u);
std::string to_text(const LocalizedElement& u);

// Stable JSON encoding {"terms":[{"coeff":"p/q","word":["slot",...]}]}.
std::string to_json_text(const AlgebraElement& a);
std::string to_json_text(const ShuffleElement& u);
std::string to_json_text(const LocalizedElement& u);

} // namespace rbx
