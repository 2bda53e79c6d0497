#pragma once

#include "rbx/algebra.hpp"
#include "rbx/errors.hpp"
#include "rbx/expression.hpp"

#include <string>

namespace rbx {

struct ParseError : DomainError {
    ParseError(const std::string& msg, int line, int col);
    int line;
    int col;
};

/// Parses the expression grammar
///
///   element := ['-'] term (('+'|'-') term)*
///   term    := factor ('*' factor)* ['/' 's' ['^' int]]
///   factor  := var ['^' ['-'] int] | rational | 'P(' element ')'
///            | 'T[' element (',' element)* ']' | '(' element ')'
///
/// over the given descriptor. Whitespace is insignificant. Negative exponents
/// are permitted only on the denominator variable (when s is that variable)
/// and on the reserved denominator symbol s. T[...] is the reconstruction
/// sugar: T[e0,...,ek] stands for e0 * P(e1 * P(... P(ek) ...)).
RBExpression parse_expression(const std::string& text, const AlgebraDescriptor& alg);

/// Evaluates a P-free and T-free expression to a plain algebra element.
AlgebraElement evaluate_plain(const RBExpression& e);

/// Reads a univariate polynomial in the given variable off an element;
/// DomainError when other variables or fractional keys occur.
UnivariatePoly univariate_from_element(const AlgebraElement& e, int var);

} // namespace rbx
