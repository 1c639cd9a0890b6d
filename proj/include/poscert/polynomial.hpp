#pragma once

#include "poscert/rational.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace poscert {

/// Exponent vector of a monomial. Ordered graded-lexicographically: total
/// degree first, then larger exponent of an earlier variable wins.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps);

  std::size_t nvars() const { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  std::uint32_t& operator[](std::size_t i) { return exps_[i]; }
  const std::vector<std::uint32_t>& exponents() const { return exps_; }
  std::uint64_t degree() const;

  Monomial operator*(const Monomial& other) const;
  bool divides(const Monomial& other) const;
  bool is_square() const;

  bool operator==(const Monomial& other) const = default;
  std::strong_ordering operator<=>(const Monomial& other) const;

 private:
  std::vector<std::uint32_t> exps_;
};

/// Integer weights per variable for weighted degrees.
struct Grading {
  std::vector<long> weights;
  static Grading standard(std::size_t nvars) { return {std::vector<long>(nvars, 1)}; }
};

/// Sparse multivariate polynomial over the rationals. Immutable in spirit:
/// all arithmetic returns new values. Zero coefficients are never stored.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational>;

  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t index);
  static Polynomial term(const Monomial& m, const Rational& c);

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Total degree; -1 for the zero polynomial.
  long degree() const;
  bool is_homogeneous() const;
  Rational coefficient(const Monomial& m) const;
  /// Constant term.
  Rational constant_term() const;
  /// Highest term in graded-lex order. Requires a nonzero polynomial.
  const std::pair<const Monomial, Rational>& leading_term() const;

  /// Adds c*m in place; drops the term if it cancels.
  void add_term(const Monomial& m, const Rational& c);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scale(const Rational& c) const;
  Polynomial pow(unsigned exponent) const;
  Polynomial times_monomial(const Monomial& m) const;

  Rational evaluate(std::span<const Rational> point) const;
  double evaluate(std::span<const double> point) const;

  /// Ring homomorphism sending variable i to images[i]. All images must share
  /// one variable count, which becomes the result's.
  Polynomial substitute(std::span<const Polynomial> images) const;

  bool operator==(const Polynomial& other) const = default;

 private:
  std::size_t nvars_ = 0;
  TermMap terms_;
};

void require_same_nvars(const Polynomial& a, const Polynomial& b);

/// Sum of terms of maximal total degree.
Polynomial highest_degree_part(const Polynomial& p);

/// Homogenizes with a new variable inserted at index 0. With `even` the
/// target degree is rounded up to the next even number.
Polynomial homogenize(const Polynomial& p, bool even);
/// Homogenizes to an explicit degree >= deg p, new variable at `position`.
Polynomial homogenize_to(const Polynomial& p, std::uint64_t degree, std::size_t position = 0);
/// Sets variable `var` to 1 and removes it.
Polynomial dehomogenize(const Polynomial& p, std::size_t var);

/// Inserts an unused variable at `position`.
Polynomial insert_variable(const Polynomial& p, std::size_t position);

/// x_i -> signs[i] * x_i, signs in {-1, +1}.
Polynomial sign_flip(const Polynomial& p, std::span<const int> signs);

/// k-th elementary symmetric polynomial of ps, 1 <= k <= ps.size().
Polynomial elementary_symmetric(std::span<const Polynomial> ps, std::size_t k);
/// e_0 .. e_m of ps in one pass.
std::vector<Polynomial> all_elementary_symmetric(std::span<const Polynomial> ps);

/// p = even(x, var^2) + var * odd(x, var^2). Both parts are returned with the
/// slot of `var` holding the square placeholder u = var^2.
struct EvenOddSplit {
  Polynomial even;
  Polynomial odd;
};
EvenOddSplit even_odd_split(const Polynomial& p, std::size_t var);
/// Inverse of even_odd_split: substitutes var^2 for the placeholder.
Polynomial recompose_even_odd(const EvenOddSplit& parts, std::size_t var);

/// Replaces var by var^2 (or by an arbitrary power) everywhere.
Polynomial inflate_variable(const Polynomial& p, std::size_t var, std::uint32_t factor);
/// Halves every exponent of var; requires all of them to be even.
Polynomial deflate_variable(const Polynomial& p, std::size_t var);

/// max over terms of sum weights[i] * exps[i].
long weighted_degree(const Polynomial& p, const Grading& grading);

/// x_1^2 + ... + x_n^2 over all variables.
Polynomial sum_of_squares_of_variables(std::size_t nvars);
/// x_1 + ... + x_n.
Polynomial sum_of_variables(std::size_t nvars);

/// All exponent vectors of total degree d in nvars variables, in descending
/// graded-lex order.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, std::uint64_t degree);
/// All exponent vectors of total degree <= d, ascending.
std::vector<Monomial> monomials_up_to_degree(std::size_t nvars, std::uint64_t degree);

/// Total order on polynomials (by variable count, then term maps in
/// graded-lex order). Used for canonical sorting.
bool polynomial_less(const Polynomial& a, const Polynomial& b);

}  // namespace poscert
