#pragma once

#include "poscert/errors.hpp"
#include "poscert/polynomial.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace poscert {

/// Polynomial text: terms joined by `+`/`-`, each a `*`-separated product of
/// integer or `a/b` coefficients, `var^exp` factors, and parenthesized
/// sub-expressions (optionally raised to a power). Decimals are rejected.
Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& vars, std::size_t line = 0);

/// Canonical rendering in descending graded-lex order, e.g. `3/2*x^2*y - y + 7`.
std::string format_polynomial(const Polynomial& p, const std::vector<std::string>& vars);

/// x1 .. xn.
std::vector<std::string> default_variable_names(std::size_t nvars);

/// Splits on ASCII whitespace.
std::vector<std::string> split_words(std::string_view text);

std::string_view trim(std::string_view text);

}  // namespace poscert
