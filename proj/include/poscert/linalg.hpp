#pragma once

#include "poscert/rational.hpp"

#include <optional>
#include <vector>

namespace poscert {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Unique solution of A x = b (A square) by exact Gaussian elimination, or
/// nullopt when A is singular.
std::optional<std::vector<Rational>> solve_exact(RationalMatrix a, std::vector<Rational> b);

/// Rank over the rationals.
std::size_t rank_exact(RationalMatrix a);

Rational determinant_exact(RationalMatrix a);

}  // namespace poscert
