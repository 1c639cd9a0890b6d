#pragma once

#include "poscert/certificate.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace poscert {

enum class SearchStatus { Found, Refuted, Inconclusive };

std::string to_string(SearchStatus status);

/// Strict: every monomial of degree d+N must carry a positive coefficient.
/// NonNegative: no negative coefficient (zeros allowed).
enum class PolyaCriterion { Strict, NonNegative };

/// One exponent N that failed the criterion.
struct PolyaFailure {
  unsigned N = 0;
  Monomial monomial;  // first offending monomial in descending graded-lex order
  Rational coefficient;
};

struct PolyaResult {
  SearchStatus status = SearchStatus::Inconclusive;
  unsigned N = 0;
  /// (x_1 + ... + x_n)^N f for the returned N.
  Polynomial product;
  std::vector<PolyaFailure> failures;
  /// Point of the closed octant (not the origin) where f <= 0, for Refuted.
  std::optional<std::vector<Rational>> witness;
  Rational witness_value;

  bool found() const { return status == SearchStatus::Found; }
};

/// Smallest N <= N_max such that (sum x_i)^N f meets the criterion. Throws
/// std::invalid_argument for zero or non-homogeneous f.
PolyaResult polya_exponent(const Polynomial& f, unsigned N_max, PolyaCriterion criterion = PolyaCriterion::Strict);

/// First coefficient violating the criterion among all monomials of the
/// polynomial's degree, if any.
std::optional<PolyaFailure> polya_violation(const Polynomial& product, PolyaCriterion criterion);

// ------------------------------------------------------------------ Habicht

/// (M2 + R2) f = M1 + R1 with M1, M2 sums of monomial squares.
struct HabichtCert {
  Polynomial f;
  SosPoly M1;
  SosPoly M2;
  SosPoly R1;
  SosPoly R2;
  unsigned D = 0;
  unsigned d = 0;  // deg f = 2d
  /// Pólya exponent of each s_i (index i-1).
  std::vector<unsigned> polya_exponents;

  /// Denominator M2 + R2 and numerator M1 + R1 as certificates over S = {}.
  ModuleCert denominator() const;
  ModuleCert numerator() const;
};

struct HabichtResult {
  SearchStatus status = SearchStatus::Inconclusive;
  std::optional<HabichtCert> cert;
  std::string reason;
};

struct HabichtOptions {
  std::size_t max_vars = 4;
  unsigned polya_max_n = 200;
};

/// Throws std::invalid_argument for zero, non-homogeneous or odd-degree f and
/// ResourceLimit when f has more than options.max_vars variables.
HabichtResult habicht_certificate(const Polynomial& f, const HabichtOptions& options = {});

/// Exact check of the identity and of the monomial-square shape of M1, M2.
Verdict verify_habicht(const HabichtCert& cert);

// ---------------------------------------------------------------- Handelman

/// n+1 affine polynomials vanishing on the facets of an n-simplex, each
/// positive at its opposite vertex.
class SimplexSpec {
 public:
  /// Throws std::invalid_argument on wrong count, non-affine input or a
  /// degenerate simplex.
  static SimplexSpec from_lambdas(std::vector<Polynomial> lambdas);
  /// lambda_i is the facet equation through all vertices but v_i, scaled so
  /// that lambda_i(v_i) = 1.
  static SimplexSpec from_vertices(const std::vector<std::vector<Rational>>& vertices);
  /// Standard simplex: lambda_0 = 1 - sum x_i, lambda_i = x_i.
  static SimplexSpec standard(std::size_t nvars);

  std::size_t nvars() const { return lambdas_.front().nvars(); }
  const std::vector<Polynomial>& lambdas() const { return lambdas_; }
  /// v_i: the vertex where every lambda_j with j != i vanishes.
  const std::vector<std::vector<Rational>>& vertices() const { return vertices_; }

 private:
  std::vector<Polynomial> lambdas_;
  std::vector<std::vector<Rational>> vertices_;
};

/// f = sum_alpha a_alpha lambda^alpha with every a_alpha > 0.
struct HandelmanCert {
  Polynomial f;
  std::vector<Polynomial> lambdas;
  std::map<Monomial, Rational> coefficients;  // alpha has n+1 entries
  unsigned polya_N = 0;
};

struct HandelmanResult {
  SearchStatus status = SearchStatus::Inconclusive;
  std::optional<HandelmanCert> cert;
  PolyaResult polya;
  std::string reason;
};

HandelmanResult handelman_simplex(const Polynomial& f, const SimplexSpec& simplex, unsigned N_max);

Polynomial expand(const HandelmanCert& cert);

/// The certificate as a preorder certificate over S: lambda^alpha is written
/// as lambda^(alpha mod 2) times the square of lambda^(alpha div 2). Every
/// lambda must occur in S. With no S, the lambdas in order.
PreorderCert to_preorder(const HandelmanCert& cert, const GeneratorSet& S);
GeneratorSet lambda_generators(const HandelmanCert& cert);

}  // namespace poscert
