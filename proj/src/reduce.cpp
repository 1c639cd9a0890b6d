#include "poscert/putinar.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace poscert {

namespace {

unsigned two_adic_valuation(std::uint64_t v) {
  unsigned i = 0;
  while (v % 2 == 0) {
    v /= 2;
    ++i;
  }
  return i;
}

bool is_pure_power(const Monomial& m) {
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < m.nvars(); ++i) nonzero += m[i] != 0;
  return nonzero <= 1;
}

Monomial pure_power(std::size_t n, std::size_t i, std::uint32_t e) {
  Monomial m(n);
  m[i] = e;
  return m;
}

/// (sum x^2)^j as monomial squares.
SosPoly radial_power(std::size_t n, unsigned j) {
  return SosPoly::from_square_monomials(sum_of_squares_of_variables(n).pow(j));
}

/// Every m <= beta (componentwise) of total degree `degree`.
std::vector<Monomial> sub_monomials(const Monomial& beta, std::uint64_t degree) {
  std::vector<Monomial> out;
  Monomial cur(beta.nvars());
  auto rec = [&](auto&& self, std::size_t k, std::uint64_t left) -> void {
    if (k == beta.nvars()) {
      if (left == 0) out.push_back(cur);
      return;
    }
    for (std::uint32_t e = 0; e <= beta[k] && e <= left; ++e) {
      cur[k] = e;
      self(self, k + 1, left - e);
    }
    cur[k] = 0;
  };
  rec(rec, 0, degree);
  return out;
}

/// Running polynomial P = base + sum of added squares.
class SquareAccumulator {
 public:
  explicit SquareAccumulator(const Polynomial& start) : poly_(start), added_(start.nvars()) {}

  void add(const Rational& weight, const Polynomial& base) {
    added_.add_square(weight, base);
    poly_ += (base * base).scale(weight);
  }
  const Polynomial& poly() const { return poly_; }
  /// Moves the collected squares into `expr`.
  CertExpr flush(const CertExpr& expr) {
    if (added_.empty()) return expr;
    CertExpr out = expr + CertExpr::sos(added_);
    added_ = SosPoly(poly_.nvars());
    return out;
  }

 private:
  Polynomial poly_;
  SosPoly added_;
};

BallReduction reduce_with(const CertExpr& p_cert, const HabichtCert& w) {
  std::vector<ReductionSnapshot> steps;
  const std::size_t n = p_cert.nvars();
  // Q = (M2 + R2) p + R1 = -M1 + R
  const SosPoly denom = w.M2 + w.R2;
  CertExpr expr = denom.size() == 1 && denom.expand() == Polynomial::constant(n, 1)
                      ? p_cert
                      : CertExpr::square_scale(denom, p_cert);
  if (!w.R1.empty()) expr = expr + CertExpr::sos(w.R1);
  steps.push_back({"multiply by the Habicht denominator", expr});

  const auto top_degree = static_cast<std::uint64_t>(expr.polynomial().degree());
  std::uint64_t T = 2;
  while (T < top_degree) T *= 2;
  if (T != top_degree) {
    expr = CertExpr::square_scale(radial_power(n, static_cast<unsigned>((T - top_degree) / 2)), expr);
    steps.push_back({"pad to degree " + std::to_string(T), expr});
  }
  unsigned d = 0;
  while ((std::uint64_t{1} << d) < T) ++d;

  SquareAccumulator acc(expr.polynomial());
  for (unsigned i = 0; i < d; ++i) {
    std::vector<std::pair<Monomial, Rational>> targets;
    for (const auto& [m, c] : acc.poly().terms()) {
      const std::uint64_t dm = m.degree();
      if (dm == 0 || dm >= T) continue;
      if (two_adic_valuation(dm) == i) targets.emplace_back(m, c);
    }
    const std::uint64_t h = std::uint64_t{1} << i;
    for (const auto& [beta, c] : targets) {
      const std::uint64_t dm = beta.degree();
      const std::uint64_t low = (dm - h) / 2;
      Monomial b1(n);
      std::uint64_t need = low;
      for (std::size_t k = n; k-- > 0 && need > 0;) {
        const std::uint32_t take = static_cast<std::uint32_t>(std::min<std::uint64_t>(beta[k], need));
        b1[k] = take;
        need -= take;
      }
      Monomial b2(n);
      for (std::size_t k = 0; k < n; ++k) b2[k] = beta[k] - b1[k];
      const Rational abs_c = abs(c);
      Rational s = 1;
      if (dm - low == T / 2) {
        // m2^2 lands in the top degree: take the split with the most room there
        Rational best = -acc.poly().coefficient(b2 * b2);
        for (const Monomial& cand : sub_monomials(beta, low)) {
          Monomial other(n);
          for (std::size_t k = 0; k < n; ++k) other[k] = beta[k] - cand[k];
          const Rational slack = -acc.poly().coefficient(other * other);
          if (slack > best) {
            best = slack;
            b1 = cand;
            b2 = other;
          }
        }
        if (best <= 0) throw std::logic_error("no top-degree room to absorb a monomial");
        s = best / abs_c;
      }
      const Polynomial m1 = Polynomial::term(b1, 1);
      const Polynomial m2 = Polynomial::term(b2, 1);
      const Rational weight = abs_c / (2 * s);
      const Polynomial base = c > 0 ? m1 - m2.scale(s) : m1 + m2.scale(s);
      acc.add(weight, base);
    }
    expr = acc.flush(expr);
    steps.push_back({"eliminate monomials of 2-adic class " + std::to_string(i), expr});
  }

  for (const auto& [m, c] : acc.poly().terms()) {
    if (m.degree() != 0 && m.degree() != T)
      throw std::logic_error("elimination left a monomial of intermediate degree");
  }
  std::vector<std::pair<Monomial, Rational>> mixed;
  for (const auto& [m, c] : acc.poly().terms())
    if (m.degree() == T && !is_pure_power(m)) mixed.emplace_back(m, c);
  for (const auto& [m, c] : mixed) {
    if (c >= 0 || !m.is_square()) throw std::logic_error("top-degree part is not a negative monomial-square sum");
    Monomial half(n);
    for (std::size_t k = 0; k < n; ++k) half[k] = m[k] / 2;
    acc.add(-c, Polynomial::term(half, 1));
  }
  expr = acc.flush(expr);
  steps.push_back({"remove mixed top-degree monomials", expr});

  std::vector<Rational> coeffs(n);
  for (std::size_t i = 0; i < n; ++i) {
    coeffs[i] = -acc.poly().coefficient(pure_power(n, i, static_cast<std::uint32_t>(T)));
    if (coeffs[i] <= 0) throw std::logic_error("pure power x_i^T missing from the top-degree part");
  }
  const Rational cmin = *std::min_element(coeffs.begin(), coeffs.end());
  for (std::size_t i = 0; i < n; ++i)
    if (coeffs[i] > cmin)
      acc.add(coeffs[i] - cmin, Polynomial::term(pure_power(n, i, static_cast<std::uint32_t>(T / 2)), 1));
  expr = acc.flush(expr);
  steps.push_back({"equalize pure powers", expr});
  if (cmin != 1) {
    expr = CertExpr::scaled(1 / cmin, expr);
    steps.push_back({"divide by " + to_string(cmin), expr});
  }

  SquareAccumulator descent(expr.polynomial());
  for (std::uint64_t t = T; t > 2; t /= 2) {
    for (std::size_t i = 0; i < n; ++i)
      descent.add(1, Polynomial::term(pure_power(n, i, static_cast<std::uint32_t>(t / 2)), 1) -
                         Polynomial::constant(n, Rational(1, 2)));
    expr = descent.flush(expr);
    steps.push_back({"lower exponent to " + std::to_string(t / 2), expr});
  }
  Rational N = expr.polynomial().constant_term();
  if (N <= 0) {
    expr = expr + CertExpr::sos(SosPoly::constant(n, 1 - N));
    N = 1;
    steps.push_back({"raise the constant to 1", expr});
  }
  if (expr.polynomial() != BallSpec{N}.polynomial(n))
    throw std::logic_error("reduction did not reach the form N - sum x^2");
  return BallReduction{expr, N, std::move(steps)};
}

}  // namespace

std::optional<HabichtCert> trivial_witness(const Polynomial& minus_top) {
  const std::size_t n = minus_top.nvars();
  if (minus_top.is_zero() || !minus_top.is_homogeneous() || minus_top.degree() % 2 != 0) return std::nullopt;
  const auto deg = static_cast<std::uint32_t>(minus_top.degree());
  for (std::size_t i = 0; i < n; ++i)
    if (minus_top.coefficient(pure_power(n, i, deg)) <= 0) return std::nullopt;
  HabichtCert w;
  try {
    w.M1 = SosPoly::from_square_monomials(minus_top);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
  w.f = minus_top;
  w.M2 = SosPoly::constant(n, 1);
  w.R1 = SosPoly(n);
  w.R2 = SosPoly(n);
  w.d = deg / 2;
  w.D = w.d;
  return w;
}

BallReduction reduce_to_ball(const CertExpr& p_cert, const GeneratorSet& S, const std::optional<HabichtCert>& witness) {
  const Polynomial& p = p_cert.polynomial();
  const std::size_t n = p.nvars();
  if (n == 0 || n != S.nvars()) throw std::invalid_argument("variable count mismatch");
  if (p.degree() < 2 || p.degree() % 2 != 0)
    throw std::invalid_argument("p must have even degree >= 2 to be negative at infinity");
  if (auto ball = as_ball(p)) {
    CertExpr expr = ball->second == 1 ? p_cert : CertExpr::scaled(1 / ball->second, p_cert);
    return BallReduction{expr, ball->first, {{"already of the form N - sum x^2", expr}}};
  }

  const Polynomial minus_top = -highest_degree_part(p);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> e(n, 0);
    e[i] = 1;
    if (minus_top.evaluate(e) <= 0)
      throw std::invalid_argument("precondition violated: highest degree part of p is not negative at unit vector e" +
                                  std::to_string(i + 1));
  }

  if (witness) {
    if (witness->f != minus_top) throw std::invalid_argument("witness is not for -p^g");
    Verdict v = verify_habicht(*witness);
    if (!v) throw std::invalid_argument("witness identity does not verify: " + v.message);
    return reduce_with(p_cert, *witness);
  }
  if (auto t = trivial_witness(minus_top)) {
    try {
      return reduce_with(p_cert, *t);
    } catch (const std::logic_error&) {
      // fall back to Habicht
    }
  }
  HabichtResult h = habicht_certificate(minus_top);
  if (h.status != SearchStatus::Found) throw std::invalid_argument("no Habicht witness for -p^g: " + h.reason);
  return reduce_with(p_cert, *h.cert);
}

// ------------------------------------------------------- negative at infinity

NegInfResult negative_at_infinity(const GeneratorSet& S, const FitOptions& options) {
  const std::size_t n = S.nvars();
  NegInfResult result;
  result.sigmas.assign(S.size(), SosPoly(n));
  std::vector<std::size_t> usable;
  for (std::size_t i = 1; i <= S.size(); ++i) {
    const long deg = S.generator(i).degree();
    if (deg >= 2 && deg % 2 == 0) usable.push_back(i);
  }
  if (usable.empty()) {
    result.reason = "no generator of even positive degree";
    return result;
  }
  const auto dirs = direction_grid(n, options.grid, true);
  std::vector<Polynomial> tops(S.size() + 1);
  for (std::size_t i : usable) tops[i] = highest_degree_part(S.generator(i));
  std::vector<std::vector<Rational>> tv(S.size() + 1);
  for (std::size_t i : usable)
    for (const auto& d : dirs) tv[i].push_back(tops[i].evaluate(d));
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    bool covered = false;
    for (std::size_t i : usable) covered = covered || tv[i][k] < 0;
    if (!covered) {
      result.reason = "coverage fails: no generator has negative top part at a grid direction";
      return result;
    }
  }

  std::vector<long> radial(S.size() + 1, 0);
  long D = 0;
  for (std::size_t i : usable) D = std::max(D, S.generator(i).degree());
  const std::vector<Rational> radii = [&] {
    std::vector<Rational> r;
    for (const auto& d : dirs) {
      Rational s = 0;
      for (const auto& c : d) s += c * c;
      r.push_back(s);
    }
    return r;
  }();

  // max over the grid of sum sigma_i top_i; sigma given by its value at each direction
  auto finish = [&](const std::vector<std::vector<Rational>>& sigma_values) -> std::optional<Rational> {
    std::optional<Rational> worst;
    for (std::size_t k = 0; k < dirs.size(); ++k) {
      Rational v = 0;
      for (std::size_t i : usable) v += sigma_values[i][k] * tv[i][k];
      if (v >= 0) return std::nullopt;
      if (!worst || v > *worst) worst = v;
    }
    return worst;
  };
  auto build = [&]() {
    std::vector<CertExpr> parts;
    for (std::size_t i = 1; i <= S.size(); ++i)
      if (!result.sigmas[i - 1].empty())
        parts.push_back(CertExpr::square_scale(result.sigmas[i - 1], CertExpr::generator(S, i)));
    result.expr = CertExpr::sum(parts);
    result.status = SearchStatus::Found;
  };

  // a single generator
  for (std::size_t i : usable) {
    if (std::all_of(tv[i].begin(), tv[i].end(), [](const Rational& v) { return v < 0; })) {
      result.sigmas[i - 1] = SosPoly::constant(n, 1);
      result.margin = *std::max_element(tv[i].begin(), tv[i].end());
      build();
      return result;
    }
  }

  // radial padding to a common degree
  std::vector<std::vector<Rational>> values(S.size() + 1);
  for (std::size_t i : usable) {
    radial[i] = (D - S.generator(i).degree()) / 2;
    for (std::size_t k = 0; k < dirs.size(); ++k) values[i].push_back(pow(radii[k], radial[i]));
  }
  if (auto m = finish(values)) {
    for (std::size_t i : usable) result.sigmas[i - 1] = radial_power(n, static_cast<unsigned>(radial[i]));
    result.margin = *m;
    build();
    return result;
  }

  // fitted b_i ~ sqrt(max(0, -top_i)) on the unit sphere
  std::vector<std::vector<double>> unit;
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    const double r = std::sqrt(to_double(radii[k]));
    std::vector<double> u;
    for (const auto& c : dirs[k]) u.push_back(to_double(c) / r);
    unit.push_back(std::move(u));
  }
  for (unsigned k = 1; 2 * k + D <= static_cast<long>(options.degree_cap); ++k) {
    const auto basis = monomials_of_degree(n, k);
    std::vector<double> weights(dirs.size(), 1.0);
    for (unsigned round = 0; round <= options.reweight_rounds; ++round) {
      std::vector<Polynomial> b(S.size() + 1);
      for (std::size_t i : usable) {
        Eigen::MatrixXd a(dirs.size(), basis.size());
        Eigen::VectorXd rhs(dirs.size());
        for (std::size_t p = 0; p < dirs.size(); ++p) {
          const double sw = std::sqrt(weights[p]);
          for (std::size_t j = 0; j < basis.size(); ++j) {
            double v = 1;
            for (std::size_t q = 0; q < n; ++q) v *= std::pow(unit[p][q], basis[j][q]);
            a(p, j) = sw * v;
          }
          const double top = tops[i].evaluate(std::span<const double>(unit[p]));
          rhs(p) = sw * std::sqrt(std::max(0.0, -top));
        }
        Eigen::VectorXd coeffs = a.colPivHouseholderQr().solve(rhs);
        b[i] = Polynomial(n);
        for (std::size_t j = 0; j < basis.size(); ++j) b[i].add_term(basis[j], rationalize(coeffs(j), 1024));
      }
      std::vector<std::vector<Rational>> vals(S.size() + 1);
      for (std::size_t i : usable)
        for (std::size_t p = 0; p < dirs.size(); ++p) {
          Rational bv = b[i].evaluate(dirs[p]);
          vals[i].push_back(pow(radii[p], radial[i]) * bv * bv);
        }
      if (auto m = finish(vals)) {
        for (std::size_t i : usable)
          result.sigmas[i - 1] = radial_power(n, static_cast<unsigned>(radial[i])).times_square(b[i]);
        result.margin = *m;
        build();
        return result;
      }
      for (std::size_t p = 0; p < dirs.size(); ++p) {
        Rational v = 0;
        for (std::size_t i : usable) v += vals[i][p] * tv[i][p];
        if (v >= 0) weights[p] *= 4;
      }
    }
  }
  result.reason = "no combination with negative top part on the direction grid within the degree cap";
  return result;
}

// ---------------------------------------------------------- geometric series

unsigned default_series_length(const Polynomial& p) {
  const long deg = std::max<long>(p.degree(), 0);
  return static_cast<unsigned>((deg + 1) / 2);
}

GeometricSeries geometric_series_extend(const PreorderCert& p_cert, const PreorderCert& q_cert, const GeneratorSet& S,
                                        const Rational& N, unsigned l) {
  if (N <= 0) throw std::invalid_argument("N must be positive");
  const std::size_t n = S.nvars();
  const CertExpr p = CertExpr::supplied(p_cert, S);
  const CertExpr q = CertExpr::supplied(q_cert, S);
  const Polynomial radial = sum_of_squares_of_variables(n);
  const Polynomial lhs = p.polynomial() * (Polynomial::constant(n, N) - radial);
  const Polynomial rhs = Polynomial::constant(n, 1) + q.polynomial();
  if (lhs != rhs) {
    Verdict v = compare_identity(rhs, lhs);
    throw std::invalid_argument("identity p (N - sum x^2) = 1 + q fails: " + v.message);
  }
  GeometricSeries out{p, {}};
  if (l < default_series_length(p.polynomial()))
    out.warnings.push_back("l = " + std::to_string(l) + " is below ceil(deg p / 2) = " +
                           std::to_string(default_series_length(p.polynomial())) +
                           "; the top part need not be negative");
  // F_0 = N p - 1 = q + p sum x^2
  CertExpr F = q + CertExpr::square_scale(SosPoly::sum_of_variable_squares(n), p);
  const SosPoly y = SosPoly::sum_of_variable_squares(n).scale(1 / N);
  for (unsigned j = 0; j <= l; ++j) F = q + CertExpr::square_scale(y, F);
  out.expr = F;
  return out;
}

}  // namespace poscert
