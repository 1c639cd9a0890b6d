#include "poscert/putinar.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace poscert {

namespace {

std::vector<double> to_doubles(const std::vector<Rational>& pt) {
  std::vector<double> out(pt.size());
  for (std::size_t i = 0; i < pt.size(); ++i) out[i] = to_double(pt[i]);
  return out;
}

double monomial_value(const Monomial& m, const std::vector<double>& pt) {
  double v = 1;
  for (std::size_t i = 0; i < m.nvars(); ++i)
    for (std::uint32_t e = 0; e < m[i]; ++e) v *= pt[i];
  return v;
}

/// Samples, exact values and the numeric target sqrt(sigma~).
struct FitData {
  std::vector<std::vector<Rational>> points;
  std::vector<std::vector<double>> dpoints;
  std::vector<Rational> fv;
  std::vector<Rational> gv;
  std::vector<double> target;
};

class Fitter {
 public:
  Fitter(const FitData& data, const Polynomial& f, const FitOptions& options)
      : data_(data), f_(f), options_(options) {}

  /// Exact remainder minimum for sigma, or nullopt when a double pre-check
  /// already shows a nonpositive value.
  std::optional<Rational> exact_margin(const SosPoly& sigma) const {
    const std::size_t m = data_.points.size();
    std::vector<double> sig(m, 0.0);
    for (const auto& sq : sigma.squares()) {
      const double w = to_double(sq.weight);
      for (std::size_t i = 0; i < m; ++i) {
        double b = sq.base.evaluate(std::span<const double>(data_.dpoints[i]));
        sig[i] += w * b * b;
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      double rem = to_double(data_.fv[i]) - sig[i] * to_double(data_.gv[i]);
      if (rem <= 0) return std::nullopt;
    }
    std::optional<Rational> margin;
    for (std::size_t i = 0; i < m; ++i) {
      Rational s = 0;
      for (const auto& sq : sigma.squares()) {
        Rational b = sq.base.evaluate(data_.points[i]);
        s += sq.weight * b * b;
      }
      Rational rem = data_.fv[i] - s * data_.gv[i];
      if (rem <= 0) return std::nullopt;
      if (!margin || rem < *margin) margin = rem;
    }
    return margin;
  }

  /// Points where f - sigma g <= 0 numerically.
  std::vector<std::size_t> violations(const SosPoly& sigma) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < data_.points.size(); ++i) {
      double s = 0;
      for (const auto& sq : sigma.squares()) {
        double b = sq.base.evaluate(std::span<const double>(data_.dpoints[i]));
        s += to_double(sq.weight) * b * b;
      }
      if (to_double(data_.fv[i]) - s * to_double(data_.gv[i]) <= 0) out.push_back(i);
    }
    return out;
  }

  Eigen::VectorXd solve(const std::vector<Monomial>& basis, const std::vector<double>& target,
                        const std::vector<double>& weights) const {
    const std::size_t m = data_.points.size();
    Eigen::MatrixXd a(m, basis.size());
    Eigen::VectorXd b(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double sw = std::sqrt(weights[i]);
      for (std::size_t j = 0; j < basis.size(); ++j) a(i, j) = sw * monomial_value(basis[j], data_.dpoints[i]);
      b(i) = sw * target[i];
    }
    return a.colPivHouseholderQr().solve(b);
  }

  Polynomial rationalize_poly(const std::vector<Monomial>& basis, const Eigen::VectorXd& coeffs,
                              std::uint64_t den) const {
    Polynomial r(f_.nvars());
    for (std::size_t j = 0; j < basis.size(); ++j)
      if (std::isfinite(coeffs(j))) r.add_term(basis[j], rationalize(coeffs(j), den));
    return r;
  }

  /// Tries every denominator bound; returns the first sigma with a positive
  /// exact margin.
  std::optional<std::pair<SosPoly, Rational>> try_fit(const std::vector<Monomial>& basis,
                                                       const Eigen::VectorXd& coeffs,
                                                       const SosPoly& extra, SosPoly& last) const {
    for (std::uint64_t den : options_.denominators) {
      Polynomial r = rationalize_poly(basis, coeffs, den);
      SosPoly sigma = extra;
      sigma.add_square(1, r);
      last = sigma;
      if (auto margin = exact_margin(sigma)) return std::make_pair(sigma, *margin);
    }
    return std::nullopt;
  }

  std::optional<std::pair<SosPoly, Rational>> search(const std::vector<Monomial>& basis) const {
    const std::size_t m = data_.points.size();
    std::vector<double> weights(m, 1.0);
    SosPoly last(f_.nvars());
    for (unsigned round = 0; round <= options_.reweight_rounds; ++round) {
      Eigen::VectorXd coeffs = solve(basis, data_.target, weights);
      if (auto hit = try_fit(basis, coeffs, SosPoly(f_.nvars()), last)) return hit;
      auto bad = violations(last);
      if (bad.empty()) break;
      for (std::size_t i : bad) weights[i] *= 4;
    }
    // second square on the residual sigma~ - r1^2
    SosPoly first = last;
    std::vector<double> residual(m);
    for (std::size_t i = 0; i < m; ++i) {
      double s = 0;
      for (const auto& sq : first.squares()) {
        double b = sq.base.evaluate(std::span<const double>(data_.dpoints[i]));
        s += to_double(sq.weight) * b * b;
      }
      residual[i] = std::sqrt(std::max(0.0, data_.target[i] * data_.target[i] - s));
    }
    std::fill(weights.begin(), weights.end(), 1.0);
    for (unsigned round = 0; round <= options_.reweight_rounds / 2; ++round) {
      Eigen::VectorXd coeffs = solve(basis, residual, weights);
      SosPoly tried(f_.nvars());
      if (auto hit = try_fit(basis, coeffs, first, tried)) return hit;
      auto bad = violations(tried);
      if (bad.empty()) break;
      for (std::size_t i : bad) weights[i] *= 4;
    }
    return std::nullopt;
  }

 private:
  const FitData& data_;
  const Polynomial& f_;
  const FitOptions& options_;
};

}  // namespace

ReduceResult fit_multiplier(const Polynomial& f, const Polynomial& g, const std::vector<std::vector<Rational>>& points,
                            const FitOptions& options, std::optional<unsigned> homogeneous_degree) {
  require_same_nvars(f, g);
  ReduceResult result;
  result.sigma = SosPoly(f.nvars());
  result.remainder = f;
  if (points.empty()) {
    result.reason = "no grid points in the outer set";
    return result;
  }
  FitData data;
  data.points = points;
  std::optional<Rational> min_f;
  for (const auto& pt : points) {
    Rational fv = f.evaluate(pt);
    Rational gv = g.evaluate(pt);
    if (gv >= 0 && fv <= 0) {
      result.status = fv < 0 ? SearchStatus::Refuted : SearchStatus::Inconclusive;
      std::string coords;
      for (std::size_t i = 0; i < pt.size(); ++i) coords += (i ? "," : "") + to_string(pt[i]);
      result.reason = std::string(fv < 0 ? "f is negative" : "f vanishes") + " at the point (" + coords +
                      ") of the set; strict positivity fails";
      return result;
    }
    if (!min_f || fv < *min_f) min_f = fv;
    data.fv.push_back(fv);
    data.gv.push_back(gv);
    data.dpoints.push_back(to_doubles(pt));
  }
  if (*min_f > 0) {
    result.status = SearchStatus::Found;
    result.margin = *min_f;
    return result;
  }

  double M = 0;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (data.gv[i] != 0) M = std::max(M, to_double(data.fv[i]) / to_double(data.gv[i]));
  M += 1;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double gd = to_double(data.gv[i]);
    const double sigma = gd > 0 ? std::min(M, to_double(data.fv[i]) / (2 * gd)) : M;
    data.target.push_back(std::sqrt(std::max(0.0, sigma)));
  }

  Fitter fitter(data, f, options);
  const std::size_t n = f.nvars();
  const long deg_g = std::max<long>(g.degree(), 0);

  std::vector<unsigned> degrees;
  if (homogeneous_degree) {
    degrees.push_back(*homogeneous_degree);
  } else {
    if (deg_g > static_cast<long>(options.degree_cap)) {
      result.reason = "degree cap " + std::to_string(options.degree_cap) + " is below the generator degree";
      return result;
    }
    for (unsigned k = 0; 2 * static_cast<long>(k) + deg_g <= static_cast<long>(options.degree_cap); ++k)
      degrees.push_back(k);
  }

  if (degrees.front() == 0) {
    SosPoly unit = SosPoly::constant(n, 1);
    if (auto margin = fitter.exact_margin(unit)) {
      result.status = SearchStatus::Found;
      result.sigma = unit;
      result.remainder = f - g;
      result.margin = *margin;
      return result;
    }
  }

  for (unsigned k : degrees) {
    std::vector<Monomial> basis =
        homogeneous_degree ? monomials_of_degree(n, k) : monomials_up_to_degree(n, k);
    if (auto hit = fitter.search(basis)) {
      result.status = SearchStatus::Found;
      result.sigma = hit->first.canonical();
      result.remainder = f - result.sigma.expand() * g;
      result.margin = hit->second;
      return result;
    }
  }
  result.reason = "no multiplier up to degree " + std::to_string(2 * degrees.back()) +
                  " keeps the remainder positive on the grid";
  return result;
}

std::optional<std::pair<Rational, Rational>> as_ball(const Polynomial& g) {
  const std::size_t n = g.nvars();
  if (n == 0 || g.degree() != 2) return std::nullopt;
  Monomial x1sq(n);
  x1sq[0] = 2;
  const Rational c = -g.coefficient(x1sq);
  if (c <= 0) return std::nullopt;
  const Rational k = g.constant_term();
  if (k <= 0) return std::nullopt;
  if (g != Polynomial::constant(n, k) - sum_of_squares_of_variables(n).scale(c)) return std::nullopt;
  return std::make_pair(Rational(k / c), c);
}

ReduceResult inductive_reduce(const Polynomial& f, const GeneratorSet& S, std::size_t peel, const FitOptions& options,
                              std::optional<Rational> radius_squared) {
  if (peel == 0 || peel > S.size()) throw std::invalid_argument("peel index out of range");
  if (!radius_squared) {
    for (std::size_t j = 1; j <= S.size() && !radius_squared; ++j)
      if (j != peel)
        if (auto ball = as_ball(S.generator(j))) radius_squared = ball->first;
  }
  if (!radius_squared)
    throw std::invalid_argument("no bounding ball known for the set without the peeled generator");
  std::vector<std::vector<Rational>> points;
  for (auto& pt : box_grid(S.nvars(), sqrt_upper(*radius_squared), options.grid)) {
    bool inside = true;
    Rational r2 = 0;
    for (const auto& c : pt) r2 += c * c;
    if (r2 > *radius_squared) continue;
    for (std::size_t j = 1; j <= S.size() && inside; ++j)
      if (j != peel && S.generator(j).evaluate(pt) < 0) inside = false;
    if (inside) points.push_back(std::move(pt));
  }
  return fit_multiplier(f, S.generator(peel), points, options);
}

}  // namespace poscert
