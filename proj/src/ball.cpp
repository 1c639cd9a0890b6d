#include "poscert/putinar.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace poscert {

Polynomial BallSpec::polynomial(std::size_t nvars) const {
  return Polynomial::constant(nvars, N) - sum_of_squares_of_variables(nvars);
}

FitOptions Problem::fit_options() const {
  FitOptions o;
  o.degree_cap = degree_cap;
  o.grid = grid;
  return o;
}

namespace {

Rational default_t(const Rational& N) {
  Rational t;
  if (exact_sqrt(N, t)) return t;
  return sqrt_approx(N, 4096);
}

/// Rational point of the unit sphere near the unit vector w, by inverse
/// stereographic projection of a rationalized projection of w.
std::vector<Rational> rational_unit_vector(const std::vector<double>& w, std::uint64_t den) {
  const std::size_t n = w.size();
  const bool south = w[n - 1] > 0;
  const double denom = south ? 1 + w[n - 1] : 1 - w[n - 1];
  std::vector<Rational> p(n - 1);
  Rational norm2 = 0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    p[j] = rationalize(w[j] / denom, den);
    norm2 += p[j] * p[j];
  }
  std::vector<Rational> u(n);
  for (std::size_t j = 0; j + 1 < n; ++j) u[j] = 2 * p[j] / (norm2 + 1);
  u[n - 1] = (south ? Rational(1 - norm2) : Rational(norm2 - 1)) / (norm2 + 1);
  return u;
}

}  // namespace

std::optional<SosPoly> binomial_square_sum(const Polynomial& p) {
  const std::size_t n = p.nvars();
  std::map<Monomial, Rational> diag;
  std::vector<std::pair<Monomial, Rational>> cross;
  for (const auto& [m, c] : p.terms()) {
    if (c > 0 && m.is_square()) {
      Monomial half(n);
      for (std::size_t i = 0; i < n; ++i) half[i] = m[i] / 2;
      diag.emplace(half, c);
    } else {
      cross.emplace_back(m, c);
    }
  }
  struct Pick {
    Monomial a, b;
    Rational c;
  };
  std::vector<Pick> picks;
  std::map<Monomial, Rational> usage;
  for (const auto& [m, c] : cross) {
    std::optional<Pick> best;
    Rational best_room;
    for (const auto& [a, da] : diag) {
      if (!a.divides(m)) continue;
      Monomial b(n);
      for (std::size_t i = 0; i < n; ++i) b[i] = m[i] - a[i];
      if (!(a < b)) continue;
      auto it = diag.find(b);
      if (it == diag.end()) continue;
      const Rational room = std::min(da, it->second);
      if (!best || room > best_room) {
        best = Pick{a, b, c};
        best_room = room;
      }
    }
    if (!best) return std::nullopt;
    usage[best->a] += abs(c);
    usage[best->b] += abs(c);
    picks.push_back(*best);
  }
  // share_a[j], share_b[j]: fraction of the diagonal coefficients given to pick j
  auto assemble = [&](const std::vector<Rational>& share_a, const std::vector<Rational>& share_b) -> std::optional<SosPoly> {
    SosPoly out(n);
    std::map<Monomial, Rational> left = diag;
    for (std::size_t j = 0; j < picks.size(); ++j) {
      const auto& [a, b, c] = picks[j];
      const Rational A = diag[a] * share_a[j];
      const Rational B = diag[b] * share_b[j];
      const Rational w = abs(c) / 2;
      if (A <= 0 || A * B < w * w) return std::nullopt;
      const Rational q = A / w;
      out.add_square(w / q, Polynomial::term(a, q) + Polynomial::term(b, c > 0 ? 1 : -1));
      left[a] -= A;
      left[b] -= w / q;
    }
    for (const auto& [a, c] : left) {
      if (c < 0) return std::nullopt;
      if (c > 0) out.add_square(c, Polynomial::term(a, 1));
    }
    if (out.expand() != p) return std::nullopt;
    return out;
  };
  std::vector<Rational> share_a, share_b;
  for (const auto& [a, b, c] : picks) {
    share_a.push_back(abs(c) / usage[a]);
    share_b.push_back(abs(c) / usage[b]);
  }
  if (auto out = assemble(share_a, share_b)) return out;

  // rebalance: shrink picks with room to spare, hand the freed share to tight ones
  const std::size_t k = picks.size();
  std::vector<double> sa(k), sb(k), need(k);
  for (std::size_t j = 0; j < k; ++j) {
    sa[j] = to_double(share_a[j]);
    sb[j] = to_double(share_b[j]);
    const double w = to_double(abs(picks[j].c)) / 2;
    need[j] = w * w / (to_double(diag[picks[j].a]) * to_double(diag[picks[j].b]));
  }
  for (int round = 0; round < 200; ++round) {
    std::vector<bool> tight(k);
    bool any_tight = false;
    for (std::size_t j = 0; j < k; ++j) {
      const double ratio = need[j] * 1.000001 / (sa[j] * sb[j]);
      if (ratio < 1) {
        const double f = std::sqrt(ratio);
        sa[j] *= f;
        sb[j] *= f;
      } else {
        tight[j] = true;
        any_tight = true;
      }
    }
    if (!any_tight) break;
    std::map<Monomial, double> used, tight_used;
    for (std::size_t j = 0; j < k; ++j) {
      used[picks[j].a] += sa[j];
      used[picks[j].b] += sb[j];
      if (tight[j]) {
        tight_used[picks[j].a] += sa[j];
        tight_used[picks[j].b] += sb[j];
      }
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (!tight[j]) continue;
      sa[j] += (1 - used[picks[j].a]) * sa[j] / tight_used[picks[j].a];
      sb[j] += (1 - used[picks[j].b]) * sb[j] / tight_used[picks[j].b];
    }
  }
  for (std::size_t j = 0; j < k; ++j) {
    share_a[j] = rationalize(sa[j] * (1 - 1e-9), 1u << 30);
    share_b[j] = rationalize(sb[j] * (1 - 1e-9), 1u << 30);
  }
  return assemble(share_a, share_b);
}

ModuleCert tangent_plane_cert(const std::vector<Rational>& u, const BallSpec& ball, std::optional<Rational> t) {
  const std::size_t n = u.size();
  if (n == 0) throw std::invalid_argument("direction must have at least one coordinate");
  Rational norm2 = 0;
  for (const auto& c : u) norm2 += c * c;
  if (norm2 != 1) throw std::invalid_argument("direction is not a unit vector (sum of squares " + to_string(norm2) + ")");
  if (ball.N <= 0) throw std::invalid_argument("ball bound N must be positive");
  const Rational tt = t ? *t : default_t(ball.N);
  if (tt <= 0) throw std::invalid_argument("tangent parameter t must be positive");

  const Rational w = 1 / (2 * tt);
  SosPoly sigma0(n);
  Polynomial target = Polynomial::constant(n, (tt * tt + ball.N) * w);
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial xi = Polynomial::variable(n, i);
    sigma0.add_square(w, xi - Polynomial::constant(n, tt * u[i]));
    target -= xi.scale(u[i]);
  }
  return ModuleCert{target, {sigma0, SosPoly::constant(n, w)}};
}

std::vector<std::vector<Rational>> simplex_directions(std::size_t nvars) {
  if (nvars == 0) throw std::invalid_argument("no simplex in dimension 0");
  if (nvars == 1) return {{Rational(1)}, {Rational(-1)}};
  // regular simplex: e_i - centroid in the Helmert basis of sum = 0
  std::vector<std::vector<double>> w(nvars + 1, std::vector<double>(nvars, 0.0));
  for (std::size_t k = 1; k <= nvars; ++k) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(k * (k + 1)));
    for (std::size_t i = 0; i < k; ++i) w[i][k - 1] = scale;
    w[k][k - 1] = -static_cast<double>(k) * scale;
  }
  std::vector<std::vector<Rational>> out;
  for (auto& v : w) {
    double norm = 0;
    for (double c : v) norm += c * c;
    norm = std::sqrt(norm);
    for (double& c : v) c /= norm;
    out.push_back(rational_unit_vector(v, 64));
  }
  return out;
}

BallResult ball_certificate(const Polynomial& f, const BallSpec& ball, const FitOptions& options) {
  const std::size_t n = f.nvars();
  BallResult result;
  if (n == 0) throw std::invalid_argument("ball certificate needs at least one variable");
  const Polynomial g = ball.polynomial(n);
  const GeneratorSet B(n, {g});

  // f - c g a sum of monomial and binomial squares for c = 0 or c = -coef(x_i^2)
  std::vector<Rational> candidates{0};
  for (std::size_t i = 0; i < n; ++i) {
    Monomial m(n);
    m[i] = 2;
    Rational c = -f.coefficient(m);
    if (c > 0) candidates.push_back(c);
  }
  for (const auto& c : candidates) {
    if (auto sigma0 = binomial_square_sum(f - g.scale(c))) {
      ModuleCert cert{f, {*sigma0, SosPoly::constant(n, c)}};
      if (verify_module(cert, B)) {
        result.status = SearchStatus::Found;
        result.cert = std::move(cert);
        result.notes.push_back("direct split f = SOS + " + to_string(c) + " (N - sum x^2)");
        return result;
      }
    }
  }

  // strict positivity on the ball grid
  const Rational R = sqrt_upper(ball.N);
  for (const auto& pt : box_grid(n, R, options.grid)) {
    if (g.evaluate(pt) < 0) continue;
    Rational v = f.evaluate(pt);
    if (v <= 0) {
      result.status = v < 0 ? SearchStatus::Refuted : SearchStatus::Inconclusive;
      std::string coords;
      for (std::size_t i = 0; i < pt.size(); ++i) coords += (i ? "," : "") + to_string(pt[i]);
      result.reason = std::string(v < 0 ? "f is negative" : "f vanishes") + " at (" + coords +
                      ") in the ball; strict positivity fails";
      return result;
    }
  }

  const auto dirs = simplex_directions(n);
  std::vector<ModuleCert> tangents;
  std::vector<Polynomial> lambdas;
  for (const auto& u : dirs) {
    tangents.push_back(tangent_plane_cert(u, ball));
    lambdas.push_back(tangents.back().target);
  }
  std::optional<SimplexSpec> simplex;
  try {
    simplex = SimplexSpec::from_lambdas(lambdas);
  } catch (const std::invalid_argument& e) {
    result.reason = std::string("no rational simplex around the ball: ") + e.what();
    return result;
  }

  Polynomial rest = f;
  SosPoly ball_sigma(n);
  bool positive_on_simplex = true;
  for (const auto& pt : simplex_grid(simplex->vertices(), options.grid))
    if (f.evaluate(pt) <= 0) {
      positive_on_simplex = false;
      break;
    }
  std::optional<HandelmanResult> hd;
  if (positive_on_simplex) {
    hd = handelman_simplex(f, *simplex, options.polya_max_n);
    if (hd->status == SearchStatus::Found) result.notes.push_back("Handelman on the tangent simplex");
  }
  if (!hd || hd->status != SearchStatus::Found) {
    ReduceResult peel = fit_multiplier(f, g, simplex_grid(simplex->vertices(), options.grid), options);
    if (peel.status != SearchStatus::Found) {
      result.status = peel.status;
      result.reason = "peeling the ball against the tangent simplex failed: " + peel.reason;
      return result;
    }
    ball_sigma = peel.sigma;
    rest = peel.remainder;
    result.notes.push_back("ball multiplier found with grid margin " + to_string(peel.margin));
    hd = handelman_simplex(rest, *simplex, options.polya_max_n);
    if (hd->status != SearchStatus::Found) {
      result.reason = "Handelman representation on the tangent simplex failed: " + hd->reason;
      return result;
    }
  }

  std::vector<CertExpr> tangent_exprs;
  for (const auto& t : tangents) tangent_exprs.push_back(CertExpr::supplied(t, B));
  std::map<std::uint64_t, CertExpr> products;
  auto product_for = [&](std::uint64_t mask) -> CertExpr {
    if (auto it = products.find(mask); it != products.end()) return it->second;
    std::optional<CertExpr> acc;
    for (std::size_t i = 0; i < tangent_exprs.size(); ++i)
      if (mask >> i & 1) acc = acc ? product_rule(*acc, tangent_exprs[i], B, CertMode::Module) : tangent_exprs[i];
    CertExpr e = acc ? *acc : CertExpr::one(n);
    products.emplace(mask, e);
    return e;
  };

  std::vector<CertExpr> terms;
  for (const auto& [alpha, a] : hd->cert->coefficients) {
    std::uint64_t mask = 0;
    Polynomial base = Polynomial::constant(n, 1);
    for (std::size_t i = 0; i <= n; ++i) {
      if (alpha[i] % 2) mask |= std::uint64_t{1} << i;
      if (alpha[i] >= 2) base = base * lambdas[i].pow(alpha[i] / 2);
    }
    terms.push_back(CertExpr::square_scale(SosPoly::square(base, a), product_for(mask)));
  }
  if (!ball_sigma.empty()) terms.push_back(CertExpr::square_scale(ball_sigma, CertExpr::generator(B, 1)));
  CertExpr total = CertExpr::sum(terms);
  if (total.polynomial() != f) throw std::logic_error("ball certificate assembly does not denote f");
  ModuleCert cert = flatten_module(total, B);
  Verdict v = verify_module(cert, B);
  if (!v) throw std::logic_error("ball certificate does not verify: " + v.message);
  result.status = SearchStatus::Found;
  result.cert = std::move(cert);
  return result;
}

}  // namespace poscert
