#include "poscert/polya.hpp"

#include "poscert/errors.hpp"
#include "poscert/linalg.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace poscert {

std::string to_string(SearchStatus status) {
  switch (status) {
    case SearchStatus::Found: return "found";
    case SearchStatus::Refuted: return "refuted";
    case SearchStatus::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::optional<PolyaFailure> polya_violation(const Polynomial& product, PolyaCriterion criterion) {
  if (product.is_zero()) return PolyaFailure{0, Monomial(product.nvars()), 0};
  if (criterion == PolyaCriterion::NonNegative) {
    for (auto it = product.terms().rbegin(); it != product.terms().rend(); ++it)
      if (it->second < 0) return PolyaFailure{0, it->first, it->second};
    return std::nullopt;
  }
  for (const Monomial& m : monomials_of_degree(product.nvars(), product.degree())) {
    Rational c = product.coefficient(m);
    if (c <= 0) return PolyaFailure{0, m, c};
  }
  return std::nullopt;
}

namespace {

void add_simplex_grid(std::size_t n, unsigned denominator, std::vector<std::vector<Rational>>& out) {
  std::vector<unsigned> counts(n, 0);
  // compositions of `denominator` into n parts
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i + 1 == n) {
      counts[i] = left;
      std::vector<Rational> pt(n);
      for (std::size_t j = 0; j < n; ++j) pt[j] = ratio(static_cast<long>(counts[j]), static_cast<long>(denominator));
      out.push_back(std::move(pt));
      return;
    }
    for (unsigned c = 0; c <= left; ++c) {
      counts[i] = c;
      rec(i + 1, left - c);
    }
  };
  rec(0, denominator);
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Searches nonnegative points for f <= 0 (f < 0 preferred).
void find_octant_witness(const Polynomial& f, const std::vector<PolyaFailure>& failures, PolyaResult& result) {
  const std::size_t n = f.nvars();
  std::vector<std::vector<Rational>> candidates;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> e(n, 0);
    e[i] = 1;
    candidates.push_back(std::move(e));
  }
  for (const auto& fail : failures) {
    std::vector<Rational> pt(n);
    bool nonzero = false;
    for (std::size_t i = 0; i < n; ++i) {
      pt[i] = fail.monomial[i];
      nonzero = nonzero || fail.monomial[i] != 0;
    }
    if (nonzero) candidates.push_back(std::move(pt));
  }
  candidates.emplace_back(n, Rational(1));
  for (unsigned den = 2; den <= 8 && n > 1; ++den) {
    if (binomial(den + n - 1, n - 1) > 4000) break;
    add_simplex_grid(n, den, candidates);
  }

  std::optional<std::size_t> zero_at;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    Rational v = f.evaluate(candidates[k]);
    if (v < 0) {
      result.witness = candidates[k];
      result.witness_value = v;
      return;
    }
    if (v == 0 && !zero_at) zero_at = k;
  }
  if (zero_at) {
    result.witness = candidates[*zero_at];
    result.witness_value = 0;
  }
}

}  // namespace

PolyaResult polya_exponent(const Polynomial& f, unsigned N_max, PolyaCriterion criterion) {
  if (f.is_zero()) throw std::invalid_argument("Pólya search needs a nonzero polynomial");
  if (!f.is_homogeneous()) throw std::invalid_argument("Pólya search needs a homogeneous polynomial");
  PolyaResult result;
  const Polynomial linear = sum_of_variables(f.nvars());
  Polynomial product = f;
  for (unsigned N = 0;; ++N) {
    auto bad = polya_violation(product, criterion);
    if (!bad) {
      result.status = SearchStatus::Found;
      result.N = N;
      result.product = std::move(product);
      return result;
    }
    bad->N = N;
    result.failures.push_back(*bad);
    if (N == N_max) break;
    product = product * linear;
  }
  result.N = N_max;
  find_octant_witness(f, result.failures, result);
  // With zeros allowed only a strictly negative value refutes.
  if (result.witness && (result.witness_value < 0 || criterion == PolyaCriterion::Strict))
    result.status = SearchStatus::Refuted;
  else
    result.witness.reset();
  return result;
}

// ------------------------------------------------------------------ Habicht

namespace {

/// Polynomial in u = x^2 with nonnegative coefficients, read in x.
SosPoly monomial_squares_from_u(const Polynomial& p) {
  SosPoly out(p.nvars());
  for (const auto& [m, c] : p.terms()) {
    if (c < 0) throw std::logic_error("negative coefficient in a monomial-square sum");
    out.add_square(c, Polynomial::term(m, 1));
  }
  return out;
}

Polynomial deflate_all(const Polynomial& p) {
  Polynomial out = p;
  for (std::size_t i = 0; i < p.nvars(); ++i) out = deflate_variable(out, i);
  return out;
}

}  // namespace

ModuleCert HabichtCert::denominator() const {
  SosPoly sigma = M2 + R2;
  return ModuleCert{sigma.expand(), {sigma}};
}

ModuleCert HabichtCert::numerator() const {
  SosPoly sigma = M1 + R1;
  return ModuleCert{sigma.expand(), {sigma}};
}

HabichtResult habicht_certificate(const Polynomial& f, const HabichtOptions& options) {
  if (f.is_zero()) throw std::invalid_argument("Habicht construction needs a nonzero polynomial");
  if (!f.is_homogeneous()) throw std::invalid_argument("Habicht construction needs a homogeneous polynomial");
  if (f.degree() % 2 != 0) throw std::invalid_argument("Habicht construction needs even degree");
  const std::size_t n = f.nvars();
  if (n > options.max_vars)
    throw ResourceLimit("Habicht construction with " + std::to_string(n) + " variables exceeds the cap of " +
                        std::to_string(options.max_vars));
  if (n == 0) throw std::invalid_argument("Habicht construction needs at least one variable");

  const std::size_t K = std::size_t{1} << n;
  std::vector<Polynomial> flips;
  flips.reserve(K);
  for (std::size_t mask = 0; mask < K; ++mask) {
    std::vector<int> signs(n);
    for (std::size_t i = 0; i < n; ++i) signs[i] = (mask >> i) & 1 ? -1 : 1;
    flips.push_back(sign_flip(f, signs));
  }
  const std::vector<Polynomial> e = all_elementary_symmetric(flips);

  HabichtResult result;
  const unsigned d = static_cast<unsigned>(f.degree() / 2);
  unsigned D = d;
  std::vector<Polynomial> s_u(K + 1);
  std::vector<unsigned> exponents;
  for (std::size_t i = 1; i <= K; ++i) {
    s_u[i] = deflate_all(e[i]);
    PolyaResult polya = polya_exponent(s_u[i], options.polya_max_n);
    if (!polya.found()) {
      result.status = polya.status;
      result.reason = "Pólya search failed on elementary symmetric polynomial s_" + std::to_string(i) +
                      (polya.status == SearchStatus::Refuted ? " (nonpositive value found; f is not positive definite)"
                                                             : " within N <= " + std::to_string(options.polya_max_n));
      return result;
    }
    exponents.push_back(polya.N);
    D = std::max<unsigned>(D, d + static_cast<unsigned>((polya.N + i - 1) / i));
  }

  const Polynomial sum_u = sum_of_variables(n);
  auto sigma_u = [&](std::size_t i) { return sum_u.pow(static_cast<unsigned>((D - d) * i)) * s_u[i]; };
  const Polynomial pad_u = sum_u.pow(D - d);
  const Polynomial f_tilde = sum_of_squares_of_variables(n).pow(D - d) * f;

  HabichtCert cert;
  cert.f = f;
  cert.D = D;
  cert.d = d;
  cert.polya_exponents = exponents;
  cert.M1 = monomial_squares_from_u(sigma_u(K));
  cert.M2 = monomial_squares_from_u(pad_u * sigma_u(K - 1));
  cert.R1 = SosPoly::square(f_tilde.pow(static_cast<unsigned>(K / 2)));
  for (std::size_t i = 2; i + 2 <= K; i += 2)
    cert.R1 += monomial_squares_from_u(sigma_u(i)).times_square(f_tilde.pow(static_cast<unsigned>((K - i) / 2)));
  cert.R2 = SosPoly(n);
  for (std::size_t i = 1; i + 3 <= K; i += 2)
    cert.R2 +=
        monomial_squares_from_u(pad_u * sigma_u(i)).times_square(f_tilde.pow(static_cast<unsigned>((K - 1 - i) / 2)));

  Verdict v = verify_habicht(cert);
  if (!v) throw std::logic_error("Habicht assembly produced a non-verifying identity: " + v.message);
  result.status = SearchStatus::Found;
  result.cert = std::move(cert);
  return result;
}

Verdict verify_habicht(const HabichtCert& cert) {
  if (!cert.M1.monomial_squares_only() || !cert.M2.monomial_squares_only()) {
    Verdict v;
    v.status = VerdictStatus::IdentityMismatch;
    v.message = "M1 and M2 must be sums of monomial squares";
    return v;
  }
  const Polynomial left = (cert.M2.expand() + cert.R2.expand()) * cert.f;
  const Polynomial right = cert.M1.expand() + cert.R1.expand();
  return compare_identity(right, left);
}

// ---------------------------------------------------------------- Handelman

namespace {

std::vector<std::vector<Rational>> vertices_of(const std::vector<Polynomial>& lambdas) {
  const std::size_t n = lambdas.front().nvars();
  std::vector<std::vector<Rational>> vertices;
  for (std::size_t i = 0; i <= n; ++i) {
    RationalMatrix a;
    std::vector<Rational> b;
    for (std::size_t j = 0; j <= n; ++j) {
      if (j == i) continue;
      std::vector<Rational> row(n);
      for (std::size_t k = 0; k < n; ++k) {
        Monomial m(n);
        m[k] = 1;
        row[k] = lambdas[j].coefficient(m);
      }
      a.push_back(std::move(row));
      b.push_back(-lambdas[j].constant_term());
    }
    auto v = solve_exact(std::move(a), std::move(b));
    if (!v) throw std::invalid_argument("degenerate simplex: facet equations are not independent");
    if (lambdas[i].evaluate(*v) <= 0)
      throw std::invalid_argument("lambda_" + std::to_string(i) + " is not positive at its opposite vertex");
    vertices.push_back(std::move(*v));
  }
  return vertices;
}

}  // namespace

SimplexSpec SimplexSpec::from_lambdas(std::vector<Polynomial> lambdas) {
  if (lambdas.empty()) throw std::invalid_argument("a simplex needs n+1 affine polynomials");
  const std::size_t n = lambdas.front().nvars();
  if (lambdas.size() != n + 1)
    throw std::invalid_argument("an n-simplex needs exactly n+1 = " + std::to_string(n + 1) + " affine polynomials");
  for (const auto& l : lambdas) {
    require_same_nvars(l, lambdas.front());
    if (l.degree() > 1 || l.is_zero()) throw std::invalid_argument("simplex polynomials must be affine and nonzero");
  }
  SimplexSpec s;
  s.vertices_ = vertices_of(lambdas);
  s.lambdas_ = std::move(lambdas);
  return s;
}

SimplexSpec SimplexSpec::from_vertices(const std::vector<std::vector<Rational>>& vertices) {
  if (vertices.empty()) throw std::invalid_argument("a simplex needs n+1 vertices");
  const std::size_t n = vertices.front().size();
  if (vertices.size() != n + 1) throw std::invalid_argument("an n-simplex needs exactly n+1 vertices");
  for (const auto& v : vertices)
    if (v.size() != n) throw std::invalid_argument("vertex dimension mismatch");
  // Barycentric coordinates: solve [v_j; 1] b = [x; 1] symbolically by
  // inverting the (n+1)x(n+1) vertex matrix column by column.
  RationalMatrix m(n + 1, std::vector<Rational>(n + 1));
  for (std::size_t j = 0; j <= n; ++j) {
    for (std::size_t k = 0; k < n; ++k) m[k][j] = vertices[j][k];
    m[n][j] = 1;
  }
  std::vector<Polynomial> lambdas(n + 1, Polynomial(n));
  for (std::size_t col = 0; col <= n; ++col) {
    std::vector<Rational> unit(n + 1, 0);
    unit[col] = 1;
    auto inv_col = solve_exact(m, unit);
    if (!inv_col) throw std::invalid_argument("degenerate simplex: vertices are affinely dependent");
    // b = M^{-1} [x; 1]; column `col` multiplies x_col (or 1 for col = n).
    Polynomial factor = col < n ? Polynomial::variable(n, col) : Polynomial::constant(n, 1);
    for (std::size_t i = 0; i <= n; ++i) lambdas[i] += factor.scale((*inv_col)[i]);
  }
  return from_lambdas(std::move(lambdas));
}

SimplexSpec SimplexSpec::standard(std::size_t nvars) {
  std::vector<Polynomial> lambdas;
  lambdas.push_back(Polynomial::constant(nvars, 1) - sum_of_variables(nvars));
  for (std::size_t i = 0; i < nvars; ++i) lambdas.push_back(Polynomial::variable(nvars, i));
  return from_lambdas(std::move(lambdas));
}

HandelmanResult handelman_simplex(const Polynomial& f, const SimplexSpec& simplex, unsigned N_max) {
  const std::size_t n = simplex.nvars();
  if (f.nvars() != n) throw std::invalid_argument("polynomial and simplex have different variable counts");
  HandelmanResult result;
  if (f.is_zero()) {
    result.reason = "zero polynomial is not positive on the simplex";
    return result;
  }
  const auto& v = simplex.vertices();

  // g(b_1..b_n) = f(v_0 + sum b_j (v_j - v_0))
  std::vector<Polynomial> images;
  for (std::size_t k = 0; k < n; ++k) {
    Polynomial img = Polynomial::constant(n, v[0][k]);
    for (std::size_t j = 1; j <= n; ++j) img += Polynomial::variable(n, j - 1).scale(v[j][k] - v[0][k]);
    images.push_back(std::move(img));
  }
  const Polynomial g = f.substitute(images);
  const std::uint64_t deg = static_cast<std::uint64_t>(std::max<long>(g.degree(), 0));
  const Polynomial homogeneous = homogenize_to(g, deg, 0);
  std::vector<Polynomial> to_bary;
  to_bary.push_back(sum_of_variables(n + 1));
  for (std::size_t j = 1; j <= n; ++j) to_bary.push_back(Polynomial::variable(n + 1, j));
  const Polynomial h = homogeneous.substitute(to_bary);

  result.polya = polya_exponent(h, N_max, PolyaCriterion::NonNegative);
  if (!result.polya.found()) {
    result.status = result.polya.status;
    result.reason = result.polya.status == SearchStatus::Refuted
                        ? "f is negative at a point of the simplex"
                        : "no Pólya exponent N <= " + std::to_string(N_max) + " in barycentric coordinates";
    return result;
  }

  HandelmanCert cert;
  cert.f = f;
  cert.lambdas = simplex.lambdas();
  cert.polya_N = result.polya.N;
  std::vector<Rational> at_vertex(n + 1);
  for (std::size_t i = 0; i <= n; ++i) at_vertex[i] = simplex.lambdas()[i].evaluate(v[i]);
  for (const auto& [alpha, c] : result.polya.product.terms()) {
    Rational a = c;
    for (std::size_t i = 0; i <= n; ++i) a /= pow(at_vertex[i], alpha[i]);
    cert.coefficients.emplace(alpha, a);
  }
  if (expand(cert) != f) throw std::logic_error("Handelman pull-back does not reproduce f");
  result.status = SearchStatus::Found;
  result.cert = std::move(cert);
  return result;
}

Polynomial expand(const HandelmanCert& cert) {
  const std::size_t n = cert.f.nvars();
  Polynomial out(n);
  for (const auto& [alpha, a] : cert.coefficients) {
    Polynomial term = Polynomial::constant(n, a);
    for (std::size_t i = 0; i < cert.lambdas.size(); ++i)
      if (alpha[i] != 0) term = term * cert.lambdas[i].pow(alpha[i]);
    out += term;
  }
  return out;
}

GeneratorSet lambda_generators(const HandelmanCert& cert) { return GeneratorSet(cert.f.nvars(), cert.lambdas); }

PreorderCert to_preorder(const HandelmanCert& cert, const GeneratorSet& S) {
  std::vector<std::size_t> position(cert.lambdas.size());
  for (std::size_t i = 0; i < cert.lambdas.size(); ++i) {
    auto it = std::find(S.generators().begin(), S.generators().end(), cert.lambdas[i]);
    if (it == S.generators().end())
      throw std::invalid_argument("lambda_" + std::to_string(i) + " is not a generator of S");
    position[i] = static_cast<std::size_t>(it - S.generators().begin());
  }
  const std::size_t n = cert.f.nvars();
  PreorderCert out{cert.f, {}};
  for (const auto& [alpha, a] : cert.coefficients) {
    std::uint64_t mask = 0;
    Polynomial base = Polynomial::constant(n, 1);
    for (std::size_t i = 0; i < cert.lambdas.size(); ++i) {
      if (alpha[i] % 2) mask |= std::uint64_t{1} << position[i];
      if (alpha[i] >= 2) base = base * cert.lambdas[i].pow(alpha[i] / 2);
    }
    auto [it, inserted] = out.sigmas.try_emplace(mask, SosPoly(n));
    it->second.add_square(a, base);
  }
  return out;
}

}  // namespace poscert
