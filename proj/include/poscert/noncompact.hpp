#pragma once

#include "poscert/certificate.hpp"
#include "poscert/polya.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace poscert {

// ------------------------------------------------------------ intervals

/// Closed piece of the line; a missing endpoint means infinity.
struct Interval {
  std::optional<Rational> lo;
  std::optional<Rational> hi;
  bool operator==(const Interval&) const = default;
};

/// Sorted, disjoint closed pieces separated by gaps of positive length.
class IntervalUnion {
 public:
  IntervalUnion() = default;
  /// Throws std::invalid_argument when pieces are unsorted, overlap, touch,
  /// or have lo > hi.
  explicit IntervalUnion(std::vector<Interval> pieces);

  /// `[0,1]u[2,inf)`, `(-inf,3]`, `(-inf,inf)`. Pieces joined by `u` or `U`.
  static IntervalUnion parse(std::string_view text);

  const std::vector<Interval>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }
  bool compact() const;
  bool contains(const Rational& x) const;
  std::string to_string() const;
  bool operator==(const IntervalUnion&) const = default;

 private:
  std::vector<Interval> pieces_;
};

/// x - a for a minimum a, (x - b)(x - a') for every gap (b, a'), b - x for a
/// maximum b, in increasing order of position. Throws on an empty union.
std::vector<Polynomial> natural_generators(const IntervalUnion& K);

/// {x : g(x) >= 0 for all g in S} for univariate S. Endpoints must be
/// rational; throws std::invalid_argument otherwise.
IntervalUnion semialgebraic_set_1d(const std::vector<Polynomial>& S);

struct Putinar1dVerdict {
  bool putinar = false;
  IntervalUnion K;                // recomputed from S
  std::vector<Polynomial> natural;
  std::vector<Polynomial> missing;  // natural generators with no positive multiple in S
  /// False when a declared K differs from the recomputed one.
  bool declared_matches = true;
};

/// Recomputes K from S and tests whether every natural generator of K is a
/// positive multiple of an element of S. Throws std::invalid_argument for
/// empty or compact K.
Putinar1dVerdict is_putinar_1d(const std::vector<Polynomial>& S,
                               const std::optional<IntervalUnion>& declared = std::nullopt);

// ------------------------------------------------------------ stability

using Direction = std::vector<long>;

struct StabilityResult {
  SearchStatus status = SearchStatus::Inconclusive;
  std::vector<long> multipliers;  // r_i >= 1
  std::vector<long> sum;          // sum r_i z^(i), componentwise > 0
  /// For Refuted: u >= 0, u != 0 with <u, z^(i)> <= 0 for all i.
  std::vector<Rational> dual;
  std::string reason;
};

/// Lexicographically smallest r in {1..bound}^m with sum r_i z^(i) > 0.
/// Refuted comes with an exact dual certificate that no positive reals
/// work. Throws std::invalid_argument on an empty set, mixed lengths or a
/// zero direction; ResourceLimit when bound^m exceeds the enumeration cap.
StabilityResult stability_multipliers(const std::vector<Direction>& T, long bound = 20);

/// Degree bound d' for n = 2. One tentacle z with positive entries:
/// d max(z)/min(z). Two tentacles, relabeled so that z1^(1) > 0 >= z2^(1)
/// and z2^(2) > 0 >= z1^(2) when possible:
///   d (r1 z1^(1) + r2 z2^(2)) / min(r1 z1^(1) + r2 z1^(2), r1 z2^(1) + r2 z2^(2)).
/// Throws std::invalid_argument when the denominator is not positive.
Rational stability_degree_bound(const std::vector<Direction>& T, const std::vector<long>& r, long d);

/// "(0,1);(1,-1)" or "(0,1) (1,-1)".
std::vector<Direction> parse_directions(std::string_view text);

// ---------------------------------------------------- elimination of squares

struct Desquared {
  GeneratorSet S;  // g_i(x, y) followed by y
  PreorderCert cert;
};

/// From a module certificate of F(x, y) = f(x, y^2) over generators
/// g_i(x, y^2), builds f = sum (s_hat^2 + y s_check^2) g_i over
/// {g_i(x, y)} u {y}. Throws std::invalid_argument when the input does not
/// verify or a generator or the target is odd in y.
Desquared eliminate_squares(const ModuleCert& cert, const GeneratorSet& S, std::size_t var);

/// Polynomial automorphism phi of R^n together with its inverse. Applying
/// it to a certificate replaces every p by p o phi^{-1}, so K maps to phi(K).
class Automorphism {
 public:
  static Automorphism identity(std::size_t nvars);
  /// x_var -> x_var + q, q free of x_var.
  static Automorphism shear(std::size_t nvars, std::size_t var, const Polynomial& q);
  /// x -> A x + b with A invertible.
  static Automorphism affine(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b);

  std::size_t nvars() const { return forward_.size(); }
  const std::vector<Polynomial>& forward() const { return forward_; }
  const std::vector<Polynomial>& inverse() const { return inverse_; }
  /// p o phi^{-1}.
  Polynomial apply(const Polynomial& p) const;

 private:
  std::vector<Polynomial> forward_;
  std::vector<Polynomial> inverse_;
};

struct TransformedModule {
  GeneratorSet S;
  ModuleCert cert;
};
struct TransformedPreorder {
  GeneratorSet S;
  PreorderCert cert;
};

/// Throws std::invalid_argument when the input certificate does not verify.
TransformedModule substitute_automorphism(const ModuleCert& cert, const GeneratorSet& S, const Automorphism& phi);
TransformedPreorder substitute_automorphism(const PreorderCert& cert, const GeneratorSet& S, const Automorphism& phi);

// -------------------------------------------------- logarithmic polyhedra

/// X^{2 alpha_i} <= r_i in two variables.
struct LogPolyhedron {
  std::vector<std::array<long, 2>> alphas;
  std::vector<Rational> bounds;
};

/// Lines `ineq: a b r` meaning x^(2a) y^(2b) <= r; `#` starts a comment.
LogPolyhedron parse_log_polyhedron(std::string_view text);

struct UnimodularResult {
  bool unimodular = false;
  /// Primitive extreme rays in counterclockwise order (det > 0).
  std::optional<std::array<std::array<long, 2>, 2>> witness;
  long determinant = 0;
  std::string note;
};

/// Throws std::invalid_argument on an empty list or a zero or negative
/// exponent vector.
UnimodularResult unimodular_cone_check(const LogPolyhedron& P);

struct TripleResult {
  bool passes = true;
  /// Indices (0-based) of curves X^{2 alpha} = r meeting in one point of the
  /// open positive quadrant.
  std::optional<std::array<std::size_t, 3>> witness;
};

TripleResult triple_intersection_check(const LogPolyhedron& P);

}  // namespace poscert
