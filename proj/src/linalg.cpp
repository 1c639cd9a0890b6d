#include "poscert/linalg.hpp"

#include <stdexcept>

namespace poscert {

namespace {

/// Row-reduces in place; returns pivot count and tracks the determinant sign
/// and scale when `det` is given.
std::size_t eliminate(RationalMatrix& a, std::vector<Rational>* rhs, Rational* det) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a.front().size();
  std::size_t pivot_row = 0;
  if (det) *det = 1;
  for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
    std::size_t p = pivot_row;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) {
      if (det) *det = 0;
      continue;
    }
    if (p != pivot_row) {
      std::swap(a[p], a[pivot_row]);
      if (rhs) std::swap((*rhs)[p], (*rhs)[pivot_row]);
      if (det) *det = -*det;
    }
    const Rational pivot = a[pivot_row][c];
    if (det) *det *= pivot;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == pivot_row || a[r][c] == 0) continue;
      const Rational factor = a[r][c] / pivot;
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= factor * a[pivot_row][k];
      if (rhs) (*rhs)[r] -= factor * (*rhs)[pivot_row];
    }
    ++pivot_row;
  }
  return pivot_row;
}

}  // namespace

std::optional<std::vector<Rational>> solve_exact(RationalMatrix a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw std::invalid_argument("right-hand side length mismatch");
  for (const auto& row : a)
    if (row.size() != n) throw std::invalid_argument("matrix must be square");
  if (eliminate(a, &b, nullptr) < n) return std::nullopt;
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

std::size_t rank_exact(RationalMatrix a) { return eliminate(a, nullptr, nullptr); }

Rational determinant_exact(RationalMatrix a) {
  for (const auto& row : a)
    if (row.size() != a.size()) throw std::invalid_argument("matrix must be square");
  Rational det;
  if (eliminate(a, nullptr, &det) < a.size()) return 0;
  return det;
}

}  // namespace poscert
