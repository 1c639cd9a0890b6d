#pragma once

#include "poscert/cert_expr.hpp"
#include "poscert/polya.hpp"

#include <optional>
#include <string>
#include <vector>

namespace poscert {

/// Generator N - (x_1^2 + ... + x_n^2).
struct BallSpec {
  Rational N = 1;
  Polynomial polynomial(std::size_t nvars) const;
};

/// Numeric-fit knobs shared by every search stage.
struct FitOptions {
  unsigned degree_cap = 8;
  unsigned grid = 16;
  /// Denominator bounds tried in order when rationalizing fitted coefficients.
  std::vector<std::uint64_t> denominators{16, 256, 4096, 65536};
  unsigned reweight_rounds = 12;
  unsigned polya_max_n = 60;
};

struct Problem {
  std::vector<std::string> vars;
  GeneratorSet S;
  Polynomial f;
  CertMode mode = CertMode::Module;
  unsigned degree_cap = 8;
  unsigned grid = 16;
  std::optional<Rational> ball;
  /// Simplex vertices for Handelman problems given by `vertex:` lines.
  std::vector<std::vector<Rational>> vertices;

  FitOptions fit_options() const;
};

// ---------------------------------------------------------------- sampling

/// Grid points of the box [-R, R]^n with `resolution` steps per axis.
std::vector<std::vector<Rational>> box_grid(std::size_t nvars, const Rational& radius, unsigned resolution);
/// Points sum b_i v_i with b on the barycentric grid of the given resolution.
std::vector<std::vector<Rational>> simplex_grid(const std::vector<std::vector<Rational>>& vertices,
                                                unsigned resolution);
/// Rational points of the cube surface max|x_i| = 1 (one per antipodal pair
/// when `half`), representing every direction of projective space.
std::vector<std::vector<Rational>> direction_grid(std::size_t nvars, unsigned resolution, bool half);

/// Rational upper bound for sqrt(value).
Rational sqrt_upper(const Rational& value);

// ----------------------------------------------------------- base certificates

/// Certificate of ((t^2 + N)/(2t)) - <u, x> in M_{N - sum x^2}:
///   1/(2t) (sum (x_i - t u_i)^2 + (N - sum x_i^2)).
/// With N = t = 1 this is 1 - <u,x> = 1/2 (sum (x_i - u_i)^2 + (1 - sum x_i^2)).
/// Default t: sqrt(N) when rational, else a rational approximation.
/// Throws std::invalid_argument if sum u_i^2 != 1 or t <= 0.
ModuleCert tangent_plane_cert(const std::vector<Rational>& u, const BallSpec& ball = {},
                              std::optional<Rational> t = std::nullopt);

/// n+1 rational unit vectors whose tangent planes bound a simplex around
/// the origin (n = 1: +1 and -1).
std::vector<std::vector<Rational>> simplex_directions(std::size_t nvars);

/// Writes p as monomial squares plus binomial squares w (q a +- b)^2, one per
/// term that is not a positive square monomial, sharing the diagonal
/// coefficients in proportion to the cross-term sizes. Exact; nullopt when
/// this greedy split does not close.
std::optional<SosPoly> binomial_square_sum(const Polynomial& p);

struct BallResult {
  SearchStatus status = SearchStatus::Inconclusive;
  std::optional<ModuleCert> cert;  // over {N - sum x^2}
  std::string reason;
  std::vector<std::string> notes;
};

BallResult ball_certificate(const Polynomial& f, const BallSpec& ball, const FitOptions& options = {});

// --------------------------------------------------------------- induction

struct ReduceResult {
  SearchStatus status = SearchStatus::Inconclusive;
  SosPoly sigma;
  Polynomial remainder;
  /// Minimum of the remainder over the outer grid.
  Rational margin;
  std::string reason;
};

/// Finds sigma with f - sigma*g > 0 at every point given. Points with
/// g >= 0 must have f > 0. With `homogeneous_degree` the square bases are
/// homogeneous of that degree.
ReduceResult fit_multiplier(const Polynomial& f, const Polynomial& g, const std::vector<std::vector<Rational>>& points,
                            const FitOptions& options, std::optional<unsigned> homogeneous_degree = std::nullopt);

/// Peels generator `peel` (1-based): samples the box of radius sqrt(N) of a
/// ball generator among the other generators (or of `radius_squared`),
/// keeps the points of K_{S without peel} and fits sigma there. Throws
/// std::invalid_argument when no bounding ball is known.
ReduceResult inductive_reduce(const Polynomial& f, const GeneratorSet& S, std::size_t peel, const FitOptions& options,
                              std::optional<Rational> radius_squared = std::nullopt);

struct TraceStep {
  std::string stage;
  std::size_t generator = 0;  // 1-based, 0 when not applicable
  SosPoly multiplier;
  Polynomial remainder;
  Rational margin;
  bool verified = false;
  std::string note;
};

struct PutinarResult {
  SearchStatus status = SearchStatus::Inconclusive;
  /// Generator set of the output certificate (S, possibly extended by a
  /// declared ball).
  GeneratorSet S;
  std::optional<ModuleCert> module;
  std::optional<PreorderCert> preorder;
  std::vector<TraceStep> trace;
  std::string reason;
};

/// If g = c (N - sum x^2) with c > 0, returns N and c.
std::optional<std::pair<Rational, Rational>> as_ball(const Polynomial& g);

PutinarResult putinar_search(const Problem& problem);

// ------------------------------------------------------ reduction to a ball

struct ReductionSnapshot {
  std::string step;
  CertExpr expr;
};

struct BallReduction {
  CertExpr expr;  // denotes N - sum x_i^2
  Rational N;
  std::vector<ReductionSnapshot> steps;
};

/// The Habicht witness with M2 = 1, R1 = R2 = 0 when -p^g is a sum of
/// monomial squares containing every pure power x_i^deg.
std::optional<HabichtCert> trivial_witness(const Polynomial& minus_top);

/// From a derivation of p in M_S with p^g negative off the origin, derives
/// N - sum x_i^2. Without a witness the trivial one, then Habicht's, is used.
/// Throws std::invalid_argument on odd degree, a top part that is not
/// negative at some unit vector, or an invalid witness.
BallReduction reduce_to_ball(const CertExpr& p_cert, const GeneratorSet& S,
                             const std::optional<HabichtCert>& witness = std::nullopt);

struct NegInfResult {
  SearchStatus status = SearchStatus::Inconclusive;
  std::optional<CertExpr> expr;
  std::vector<SosPoly> sigmas;  // sigma_i for g_i, i = 1..s
  /// Maximum of the top part over the direction grid (negative on success).
  Rational margin;
  std::string reason;
};

/// Finds SOS multipliers with sum sigma_i p_i of even degree and top part
/// negative on every grid direction.
NegInfResult negative_at_infinity(const GeneratorSet& S, const FitOptions& options);

// ---------------------------------------------------- geometric series

struct GeometricSeries {
  CertExpr expr;  // N p - 1 - y - ... - y^{l+1}, y = sum x^2 / N
  std::vector<std::string> warnings;
};

/// From certificates of p, q in T_S with p (N - sum x^2) = 1 + q, derives
/// N p - 1 - y - ... - y^{l+1} through F_0 = q + p sum x^2,
/// F_{j+1} = q + y F_j. Throws std::invalid_argument if a certificate does
/// not verify or the identity fails.
GeometricSeries geometric_series_extend(const PreorderCert& p_cert, const PreorderCert& q_cert, const GeneratorSet& S,
                                        const Rational& N, unsigned l);
/// ceil(deg p / 2).
unsigned default_series_length(const Polynomial& p);

// ---------------------------------------------------------- projective

/// -(1 - sum x_i^2)^2.
Polynomial sphere_generator(std::size_t nvars);

struct SosDenominator {
  unsigned N = 0;
  SosPoly sos;  // expands to (sum x^2)^N f
};

/// From f = sigma_0 + sigma_1 * (-(1 - sum x^2)^2) with f homogeneous of
/// even degree, builds (sum x^2)^N f as a sum of squares of homogeneous
/// polynomials.
SosDenominator sos_denominator(const Polynomial& f, const ModuleCert& sphere_cert);

struct ProjectiveResult {
  SearchStatus status = SearchStatus::Inconclusive;
  unsigned N = 0;
  /// Homogeneous certificate of (sum x^2)^N f over the homogeneous S.
  std::optional<ModuleCert> cert;
  std::vector<TraceStep> trace;
  std::string reason;
};

/// Throws std::invalid_argument when f or a generator is not homogeneous of
/// even degree.
ProjectiveResult projective_putinar_search(const Problem& problem);

}  // namespace poscert
