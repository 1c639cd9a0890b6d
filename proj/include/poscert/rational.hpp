#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace poscert {

/// Exact rational coefficient. mpq_class is kept canonical (lowest terms,
/// positive denominator) by every arithmetic operator.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses `a` or `a/b` with optional leading sign. Decimals are rejected.
/// Throws std::invalid_argument on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text: `a` when the denominator is 1, else `a/b`.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

/// Best rational approximation of `value` with denominator <= max_den
/// (continued-fraction convergents and semiconvergents).
Rational rationalize(double value, std::uint64_t max_den);

/// Rational r with |r - sqrt(value)| small, r > 0 for value > 0. Exact when
/// value is the square of a rational.
Rational sqrt_approx(const Rational& value, std::uint64_t max_den);

/// Exact square root if `value` is a perfect rational square.
bool exact_sqrt(const Rational& value, Rational& root);

Rational pow(const Rational& base, long exponent);

/// num/den in lowest terms; den != 0.
Rational ratio(long num, long den);

}  // namespace poscert
