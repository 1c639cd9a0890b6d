#include "poscert/putinar.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace poscert {

namespace {

std::string point_text(const std::vector<Rational>& pt) {
  std::string s = "(";
  for (std::size_t i = 0; i < pt.size(); ++i) s += (i ? "," : "") + to_string(pt[i]);
  return s + ")";
}

bool in_set(const GeneratorSet& S, const std::vector<Rational>& pt) {
  for (const auto& g : S.generators())
    if (g.evaluate(pt) < 0) return false;
  return true;
}

/// Generator indices by ascending (degree, index).
std::vector<std::size_t> peel_order(const GeneratorSet& S, std::size_t skip) {
  std::vector<std::size_t> order;
  for (std::size_t i = 1; i <= S.size(); ++i)
    if (i != skip) order.push_back(i);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return S.generator(a).degree() < S.generator(b).degree();
  });
  return order;
}

SosPoly radial_power(std::size_t n, unsigned j) {
  return SosPoly::from_square_monomials(sum_of_squares_of_variables(n).pow(j));
}

}  // namespace

Polynomial sphere_generator(std::size_t nvars) {
  const Polynomial s = Polynomial::constant(nvars, 1) - sum_of_squares_of_variables(nvars);
  return -(s * s);
}

// ------------------------------------------------------------ Putinar search

PutinarResult putinar_search(const Problem& problem) {
  const std::size_t n = problem.f.nvars();
  if (n != problem.S.nvars()) throw std::invalid_argument("target and generators disagree on the variable count");
  const FitOptions options = problem.fit_options();
  PutinarResult result;
  result.S = problem.S;

  std::optional<CertExpr> ball_expr;
  Rational N;
  std::size_t ball_index = 0;
  for (std::size_t i = 1; i <= problem.S.size() && !ball_expr; ++i) {
    if (auto b = as_ball(problem.S.generator(i))) {
      ball_index = i;
      N = b->first;
      const CertExpr g = CertExpr::generator(problem.S, i);
      ball_expr = b->second == 1 ? g : CertExpr::scaled(1 / b->second, g);
      result.trace.push_back({"ball", i, SosPoly(n), ball_expr->polynomial(), N, true, "generator is a ball"});
    }
  }
  if (!ball_expr && problem.ball) {
    if (*problem.ball <= 0) throw std::invalid_argument("declared ball bound must be positive");
    auto gens = problem.S.generators();
    gens.push_back(BallSpec{*problem.ball}.polynomial(n));
    result.S = GeneratorSet(n, gens);
    ball_index = gens.size();
    N = *problem.ball;
    ball_expr = CertExpr::generator(result.S, ball_index);
    result.trace.push_back({"ball", ball_index, SosPoly(n), ball_expr->polynomial(), N, true,
                            "declared ball appended to S"});
  }
  const GeneratorSet& S = result.S;
  for (std::size_t i = 1; i <= S.size() && !ball_expr; ++i) {
    // 5/4 - t = (t - 3/2)^2 - (1 - t)^2 with t = sum x^2
    if (S.generator(i) != sphere_generator(n)) continue;
    const Polynomial t = sum_of_squares_of_variables(n);
    ball_expr = CertExpr::generator(S, i) + CertExpr::sos(SosPoly::square(t - Polynomial::constant(n, Rational(3, 2))));
    N = Rational(5, 4);
    result.trace.push_back({"ball", i, SosPoly(n), ball_expr->polynomial(), N, true, "sphere generator bounds 5/4 - sum x^2"});
  }
  if (!ball_expr) {
    NegInfResult ni = negative_at_infinity(S, options);
    if (ni.status != SearchStatus::Found && problem.mode == CertMode::Preorder && S.size() >= 2) {
      // pairwise products g_i g_j as extra generators
      std::vector<Polynomial> prods;
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      for (std::size_t i = 1; i <= S.size(); ++i)
        for (std::size_t j = i + 1; j <= S.size(); ++j) {
          prods.push_back(S.generator(i) * S.generator(j));
          pairs.emplace_back(i, j);
        }
      NegInfResult np = negative_at_infinity(GeneratorSet(n, prods), options);
      if (np.status == SearchStatus::Found) {
        std::vector<CertExpr> terms;
        for (std::size_t k = 0; k < pairs.size(); ++k) {
          if (np.sigmas[k].empty()) continue;
          const CertExpr prod = product_rule(CertExpr::generator(S, pairs[k].first),
                                             CertExpr::generator(S, pairs[k].second), S, CertMode::Preorder);
          terms.push_back(CertExpr::square_scale(np.sigmas[k], prod));
        }
        np.expr = CertExpr::sum(terms);
        ni = std::move(np);
      }
    }
    if (ni.status != SearchStatus::Found) {
      result.reason = "cannot bound the set: " + ni.reason;
      return result;
    }
    try {
      BallReduction red = reduce_to_ball(*ni.expr, S);
      ball_expr = red.expr;
      N = red.N;
      result.trace.push_back({"ball", 0, SosPoly(n), ni.expr->polynomial(), ni.margin, true,
                              "reduced to N - sum x^2 in " + std::to_string(red.steps.size()) + " steps"});
    } catch (const std::invalid_argument& e) {
      result.reason = std::string("reduction to a ball failed: ") + e.what();
      return result;
    }
  }

  // strict positivity on the sampled set
  std::optional<std::vector<Rational>> low;
  Rational low_value;
  for (const auto& pt : box_grid(n, sqrt_upper(N), options.grid)) {
    if (!in_set(S, pt)) continue;
    const Rational v = problem.f.evaluate(pt);
    if (v <= 0 && (!low || v < low_value)) {
      low = pt;
      low_value = v;
    }
  }
  if (low) {
    if (low_value < 0) {
      result.status = SearchStatus::Refuted;
      result.reason = "f = " + to_string(low_value) + " < 0 at " + point_text(*low) + ", a point of K";
    } else {
      result.reason = "f vanishes at " + point_text(*low) + ", a point of K; strict positivity fails";
    }
    return result;
  }

  Polynomial remainder = problem.f;
  std::vector<CertExpr> parts;
  std::vector<std::size_t> unpeeled = peel_order(S, ball_index);
  while (!unpeeled.empty()) {
    const std::size_t peel = unpeeled.front();
    std::vector<Polynomial> rest;
    for (std::size_t j : unpeeled) rest.push_back(S.generator(j));
    const GeneratorSet sub(n, rest);
    ReduceResult r = inductive_reduce(remainder, sub, 1, options, N);
    TraceStep step{"peel", peel, r.sigma, r.remainder, r.margin, r.status == SearchStatus::Found, r.reason};
    result.trace.push_back(step);
    if (r.status != SearchStatus::Found) {
      result.status = r.status == SearchStatus::Refuted && parts.empty() ? SearchStatus::Refuted
                                                                          : SearchStatus::Inconclusive;
      result.reason = "peeling g_" + std::to_string(peel) + " failed: " + r.reason;
      return result;
    }
    if (!r.sigma.empty()) parts.push_back(CertExpr::square_scale(r.sigma, CertExpr::generator(S, peel)));
    remainder = r.remainder;
    unpeeled.erase(unpeeled.begin());
  }

  BallResult base = ball_certificate(remainder, BallSpec{N}, options);
  result.trace.push_back({"base", ball_index, base.cert ? base.cert->sigmas[1] : SosPoly(n), remainder, 0,
                          base.status == SearchStatus::Found, base.reason});
  if (base.status != SearchStatus::Found) {
    result.reason = "ball certificate for the remainder failed: " + base.reason;
    return result;
  }
  if (!base.cert->sigmas[0].empty()) parts.push_back(CertExpr::sos(base.cert->sigmas[0]));
  if (!base.cert->sigmas[1].empty()) parts.push_back(CertExpr::square_scale(base.cert->sigmas[1], *ball_expr));
  const CertExpr total = parts.empty() ? CertExpr::sos(SosPoly(n)) : CertExpr::sum(parts);
  if (total.polynomial() != problem.f) throw std::logic_error("composed derivation does not denote f");

  Verdict v;
  if (problem.mode == CertMode::Module) {
    ModuleCert cert = flatten_module(total, S);
    cert.target = problem.f;
    v = verify_module(cert, S);
    result.module = std::move(cert);
  } else {
    PreorderCert cert = flatten_preorder(total, S);
    cert.target = problem.f;
    v = verify_preorder(cert, S);
    result.preorder = std::move(cert);
  }
  if (!v) throw std::logic_error("assembled certificate fails verification: " + v.message);
  result.status = SearchStatus::Found;
  return result;
}

// ------------------------------------------------------------- projective

SosDenominator sos_denominator(const Polynomial& f, const ModuleCert& sphere_cert) {
  const std::size_t n = f.nvars();
  if (f.is_zero() || !f.is_homogeneous() || f.degree() % 2 != 0)
    throw std::invalid_argument("f must be a nonzero homogeneous form of even degree");
  const GeneratorSet S(n, {sphere_generator(n)});
  if (sphere_cert.target != f) throw std::invalid_argument("certificate target differs from f");
  Verdict v = verify_module(sphere_cert, S);
  if (!v) throw std::invalid_argument("sphere certificate does not verify: " + v.message);

  const auto e = static_cast<std::uint64_t>(f.degree() / 2);
  std::uint64_t D = e;
  for (const auto& sq : sphere_cert.sigmas[0].squares())
    D = std::max<std::uint64_t>(D, static_cast<std::uint64_t>(sq.base.degree()));

  // b(x) -> B(x, z) = E(x, z^2) + z O(x, z^2); z = |x| kills the odd part
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < n; ++i) images.push_back(Polynomial::variable(n, i));
  images.push_back(sum_of_squares_of_variables(n));
  SosDenominator out;
  out.N = static_cast<unsigned>(D - e);
  out.sos = SosPoly(n);
  for (const auto& sq : sphere_cert.sigmas[0].squares()) {
    const Polynomial B = homogenize_to(sq.base, D, n);
    const EvenOddSplit parts = even_odd_split(B, n);
    out.sos.add_square(sq.weight, parts.even.substitute(images));
    const Polynomial odd = parts.odd.substitute(images);
    for (std::size_t i = 0; i < n; ++i) out.sos.add_square(sq.weight, Polynomial::variable(n, i) * odd);
  }
  const Polynomial expected = sum_of_squares_of_variables(n).pow(out.N) * f;
  if (out.sos.expand() != expected) throw std::logic_error("SOS denominator identity fails");
  return out;
}

ProjectiveResult projective_putinar_search(const Problem& problem) {
  const std::size_t n = problem.f.nvars();
  const Polynomial& f = problem.f;
  if (f.is_zero() || !f.is_homogeneous() || f.degree() % 2 != 0)
    throw std::invalid_argument("target must be a nonzero form of even degree");
  for (std::size_t i = 1; i <= problem.S.size(); ++i) {
    const Polynomial g = problem.S.generator(i);
    if (g.is_zero() || !g.is_homogeneous() || g.degree() % 2 != 0)
      throw std::invalid_argument("generator g_" + std::to_string(i) + " is not a form of even degree");
  }
  const GeneratorSet S(n, problem.S.generators(), true, true);
  const FitOptions options = problem.fit_options();
  ProjectiveResult result;
  ModuleCert cert;
  cert.sigmas.assign(S.size() + 1, SosPoly(n));

  auto finish = [&](unsigned N) {
    cert.target = sum_of_squares_of_variables(n).pow(N) * f;
    Verdict v = verify_module(cert, S);
    if (!v) throw std::logic_error("projective certificate fails verification: " + v.message);
    result.N = N;
    result.cert = cert;
    result.status = SearchStatus::Found;
    return result;
  };

  if (auto sq = binomial_square_sum(f)) {
    cert.sigmas[0] = *sq;
    result.trace.push_back({"base", 0, *sq, f, 0, true, "f is a sum of monomial and binomial squares"});
    return finish(0);
  }
  for (std::size_t i = 1; i <= S.size(); ++i) {
    const Polynomial g = S.generator(i);
    if (g.degree() != f.degree()) continue;
    const Rational c = f.leading_term().second / g.leading_term().second;
    if (c > 0 && g.scale(c) == f) {
      cert.sigmas[i] = SosPoly::constant(n, c);
      result.trace.push_back({"base", i, cert.sigmas[i], Polynomial(n), 0, true, "f is a positive multiple of g"});
      return finish(0);
    }
  }

  const auto dirs = direction_grid(n, options.grid, true);
  const std::vector<Rational>* worst = nullptr;
  Rational worst_value;
  for (const auto& d : dirs) {
    if (!in_set(S, d)) continue;
    const Rational v = f.evaluate(d);
    if (v <= 0 && (!worst || v < worst_value)) {
      worst = &d;
      worst_value = v;
    }
  }
  if (worst) {
    result.status = worst_value < 0 ? SearchStatus::Refuted : SearchStatus::Inconclusive;
    result.reason = "f = " + to_string(worst_value) + " at the direction " + point_text(*worst) + " of K";
    return result;
  }

  long max_deg = f.degree();
  for (const auto& g : S.generators()) max_deg = std::max(max_deg, g.degree());
  const auto N0 = static_cast<unsigned>((max_deg - f.degree()) / 2);
  const Polynomial radial = sum_of_squares_of_variables(n);
  Polynomial remainder = radial.pow(N0) * f;
  const long E2 = remainder.degree();

  std::vector<std::size_t> unpeeled = peel_order(S, 0);
  while (!unpeeled.empty()) {
    const std::size_t peel = unpeeled.front();
    std::vector<std::vector<Rational>> points;
    for (const auto& d : dirs) {
      bool inside = true;
      for (std::size_t j : unpeeled)
        if (j != peel && S.generator(j).evaluate(d) < 0) inside = false;
      if (inside) points.push_back(d);
    }
    const Polynomial g = S.generator(peel);
    const auto k = static_cast<unsigned>((E2 - g.degree()) / 2);
    ReduceResult r = fit_multiplier(remainder, g, points, options, k);
    result.trace.push_back({"peel", peel, r.sigma, r.remainder, r.margin, r.status == SearchStatus::Found, r.reason});
    if (r.status != SearchStatus::Found) {
      result.reason = "peeling g_" + std::to_string(peel) + " failed: " + r.reason;
      return result;
    }
    cert.sigmas[peel] = r.sigma;
    remainder = r.remainder;
    unpeeled.erase(unpeeled.begin());
  }

  unsigned N1 = 0;
  std::optional<SosPoly> direct;
  for (Polynomial lifted = remainder; !remainder.is_zero() && lifted.degree() <= std::max<long>(E2 + 4, problem.degree_cap);
       lifted = lifted * radial, ++N1) {
    if ((direct = binomial_square_sum(lifted))) break;
  }
  if (direct) {
    cert.sigmas[0] = *direct;
    result.trace.push_back({"base", 0, *direct, remainder, 0, true,
                            "(sum x^2)^" + std::to_string(N1) + " times the remainder is a sum of binomial squares"});
  } else if (!remainder.is_zero()) {
    N1 = 0;
    Problem sphere;
    sphere.vars = problem.vars;
    sphere.S = GeneratorSet(n, {sphere_generator(n)});
    sphere.f = remainder;
    sphere.degree_cap = std::max<unsigned>(problem.degree_cap, static_cast<unsigned>(E2));
    sphere.grid = problem.grid;
    PutinarResult base = putinar_search(sphere);
    for (auto step : base.trace) {
      step.stage = "sphere " + step.stage;
      result.trace.push_back(std::move(step));
    }
    if (base.status != SearchStatus::Found) {
      result.reason = "no certificate for the remainder on the unit sphere: " + base.reason;
      return result;
    }
    SosDenominator den = sos_denominator(remainder, *base.module);
    N1 = den.N;
    cert.sigmas[0] = den.sos;
  }
  if (N1 > 0) {
    const SosPoly lift = radial_power(n, N1);
    for (std::size_t i = 1; i <= S.size(); ++i)
      if (!cert.sigmas[i].empty()) cert.sigmas[i] = lift.times(cert.sigmas[i]);
  }
  return finish(N0 + N1);
}

}  // namespace poscert
