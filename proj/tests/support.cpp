#include "support.hpp"

namespace poscert::test {

namespace {

Polynomial y_negated(const Polynomial& p, std::size_t var) {
  Polynomial out(p.nvars());
  for (const auto& [m, c] : p.terms()) out.add_term(m, (m[var] % 2) ? Rational(-c) : c);
  return out;
}

}  // namespace

SuiteResult ring_law_suite(unsigned cases, unsigned seed) {
  std::mt19937 rng(seed);
  SuiteResult r;
  std::uniform_int_distribution<std::size_t> nv(1, 3);
  for (unsigned k = 0; k < cases; ++k, ++r.cases) {
    const std::size_t n = nv(rng);
    const Polynomial a = random_polynomial(rng, n, 4, 5);
    const Polynomial b = random_polynomial(rng, n, 4, 5);
    const Polynomial c = random_polynomial(rng, n, 3, 4);
    const Polynomial zero(n), one = Polynomial::constant(n, 1);
    const std::string tag = "case " + std::to_string(k);
    if (a + b != b + a) r.fail(tag + ": a+b != b+a");
    if (a * b != b * a) r.fail(tag + ": ab != ba");
    if ((a + b) + c != a + (b + c)) r.fail(tag + ": + not associative");
    if ((a * b) * c != a * (b * c)) r.fail(tag + ": * not associative");
    if (a * (b + c) != a * b + a * c) r.fail(tag + ": not distributive");
    if (a + zero != a || a * one != a || !(a * zero).is_zero()) r.fail(tag + ": identities");
    if (!(a - a).is_zero() || a + (-a) != zero) r.fail(tag + ": inverse");
    if (a.pow(3) != a * a * a) r.fail(tag + ": pow");
    for (int t = 0; t < 3; ++t) {
      const auto pt = random_point(rng, n);
      const Rational av = a.evaluate(pt), bv = b.evaluate(pt);
      if ((a * b).evaluate(pt) != av * bv || (a + b).evaluate(pt) != av + bv) r.fail(tag + ": evaluation");
    }
    const Polynomial ab = a * b;
    for (const auto& [m, coeff] : ab.terms())
      if (coeff == 0) r.fail(tag + ": stored zero coefficient");
  }
  return r;
}

SuiteResult homogenize_suite(unsigned cases, unsigned seed) {
  std::mt19937 rng(seed);
  SuiteResult r;
  std::uniform_int_distribution<std::size_t> nv(1, 3);
  for (unsigned k = 0; k < cases; ++k, ++r.cases) {
    const std::size_t n = nv(rng);
    Polynomial p = random_polynomial(rng, n, 5, 6);
    if (p.is_zero()) p = Polynomial::constant(n, 1);
    const bool even = k % 2;
    const Polynomial h = homogenize(p, even);
    const std::string tag = "case " + std::to_string(k);
    long want = p.degree();
    if (even && want % 2) ++want;
    if (!h.is_homogeneous() || h.degree() != want || h.nvars() != n + 1) r.fail(tag + ": shape");
    if (dehomogenize(h, 0) != p) r.fail(tag + ": roundtrip");
    // h(t x0, t x) = t^deg h(x0, x) at a random point.
    auto pt = random_point(rng, n + 1);
    const Rational t = 3;
    std::vector<Rational> scaled;
    for (const auto& v : pt) scaled.push_back(t * v);
    Rational tp = 1;
    for (long i = 0; i < want; ++i) tp *= t;
    if (h.evaluate(scaled) != tp * h.evaluate(pt)) r.fail(tag + ": scaling");
    // Dehomogenized value: h(1, x) = p(x).
    pt[0] = 1;
    std::vector<Rational> rest(pt.begin() + 1, pt.end());
    if (h.evaluate(pt) != p.evaluate(rest)) r.fail(tag + ": value at x0 = 1");
  }
  return r;
}

SuiteResult even_odd_suite(unsigned cases, unsigned seed) {
  std::mt19937 rng(seed);
  SuiteResult r;
  std::uniform_int_distribution<std::size_t> nv(1, 3);
  for (unsigned k = 0; k < cases; ++k, ++r.cases) {
    const std::size_t n = nv(rng);
    const std::size_t var = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    const Polynomial p = random_polynomial(rng, n, 6, 7);
    const EvenOddSplit s = even_odd_split(p, var);
    const std::string tag = "case " + std::to_string(k);
    if (recompose_even_odd(s, var) != p) r.fail(tag + ": recomposition");
    const Polynomial q = y_negated(p, var);
    const Polynomial v = Polynomial::variable(n, var);
    const Polynomial even = inflate_variable(s.even, var, 2);
    const Polynomial odd = inflate_variable(s.odd, var, 2);
    if ((p + q).scale(Rational(1, 2)) != even) r.fail(tag + ": even part");
    if ((p - q).scale(Rational(1, 2)) != v * odd) r.fail(tag + ": odd part");
  }
  return r;
}

ModuleCert corrupt(const ModuleCert& cert, std::mt19937& rng, std::string& what) {
  ModuleCert bad = cert;
  std::uniform_int_distribution<int> kind(0, 3);
  const std::size_t n = cert.target.nvars();
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < bad.sigmas.size(); ++i)
    for (std::size_t j = 0; j < bad.sigmas[i].size(); ++j) slots.emplace_back(i, j);
  int k = slots.empty() ? 3 : kind(rng);
  auto rebuild = [&](std::size_t i, std::size_t j, const Rational& w, const Polynomial& b, bool drop) {
    SosPoly s(n);
    for (std::size_t t = 0; t < bad.sigmas[i].size(); ++t) {
      const auto& sq = bad.sigmas[i].squares()[t];
      if (t != j) s.add_square(sq.weight, sq.base);
      else if (!drop) s.add_square(w, b);
    }
    bad.sigmas[i] = s;
  };
  if (k == 0) {
    auto [i, j] = slots[std::uniform_int_distribution<std::size_t>(0, slots.size() - 1)(rng)];
    const auto sq = bad.sigmas[i].squares()[j];
    const Rational factor(std::uniform_int_distribution<int>(2, 9)(rng), 1 + std::uniform_int_distribution<int>(0, 1)(rng) * 10);
    rebuild(i, j, sq.weight * factor, sq.base, false);
    what = "weight scaled";
  } else if (k == 1) {
    auto [i, j] = slots[std::uniform_int_distribution<std::size_t>(0, slots.size() - 1)(rng)];
    const auto sq = bad.sigmas[i].squares()[j];
    Polynomial extra = Polynomial::term(random_monomial(rng, n, 2), random_rational(rng, true));
    rebuild(i, j, sq.weight, sq.base + extra, false);
    what = "base term added";
  } else if (k == 2) {
    auto [i, j] = slots[std::uniform_int_distribution<std::size_t>(0, slots.size() - 1)(rng)];
    rebuild(i, j, 0, Polynomial(n), true);
    what = "square dropped";
  } else {
    bad.target += Polynomial::term(random_monomial(rng, n, 3), random_rational(rng, true));
    what = "target perturbed";
  }
  return bad;
}

SuiteResult fuzz_rejection_suite(unsigned cases, unsigned seed) {
  std::mt19937 rng(seed);
  SuiteResult r;
  for (unsigned k = 0; k < cases; ++k, ++r.cases) {
    const std::size_t n = 2;
    std::vector<Polynomial> gens;
    const unsigned s = std::uniform_int_distribution<unsigned>(0, 2)(rng);
    for (unsigned i = 0; i < s; ++i) {
      Polynomial g = random_polynomial(rng, n, 2, 3);
      if (g.is_zero()) g = Polynomial::variable(n, 0);
      gens.push_back(g);
    }
    const GeneratorSet S(n, gens);
    ModuleCert cert;
    for (unsigned i = 0; i <= s; ++i) cert.sigmas.push_back(random_sos(rng, n, 2, 2));
    cert.target = expand(cert, S);
    const std::string tag = "case " + std::to_string(k);
    if (!verify_module(cert, S)) r.fail(tag + ": valid certificate rejected");
    std::string what;
    const ModuleCert bad = corrupt(cert, rng, what);
    if (verify_module(bad, S)) r.fail(tag + ": corrupted certificate accepted (" + what + ")");
  }
  return r;
}

}  // namespace poscert::test
