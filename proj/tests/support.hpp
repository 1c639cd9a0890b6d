#pragma once

#include "poscert/io.hpp"
#include "poscert/text.hpp"

#include <random>
#include <string>
#include <vector>

namespace poscert::test {

inline Polynomial P(const std::string& text, const std::vector<std::string>& vars = {"x", "y"}) {
  return parse_polynomial(text, vars);
}

inline Rational Q(const std::string& text) { return parse_rational(text); }

/// Small random rational: numerator in [-9, 9], denominator in [1, 4].
inline Rational random_rational(std::mt19937& rng, bool nonzero = false) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
  for (;;) {
    const Rational r = ratio(num(rng), den(rng));
    if (!nonzero || r != 0) return r;
  }
}

inline Monomial random_monomial(std::mt19937& rng, std::size_t nvars, unsigned max_degree) {
  std::uniform_int_distribution<unsigned> deg(0, max_degree);
  const unsigned d = deg(rng);
  Monomial m(nvars);
  std::uniform_int_distribution<std::size_t> var(0, nvars - 1);
  for (unsigned k = 0; k < d; ++k) m[var(rng)] += 1;
  return m;
}

inline Polynomial random_polynomial(std::mt19937& rng, std::size_t nvars, unsigned max_degree, unsigned max_terms) {
  Polynomial p(nvars);
  std::uniform_int_distribution<unsigned> terms(0, max_terms);
  const unsigned t = terms(rng);
  for (unsigned k = 0; k < t; ++k) p.add_term(random_monomial(rng, nvars, max_degree), random_rational(rng));
  return p;
}

inline std::vector<Rational> random_point(std::mt19937& rng, std::size_t nvars) {
  std::vector<Rational> pt;
  for (std::size_t i = 0; i < nvars; ++i) pt.push_back(random_rational(rng));
  return pt;
}

/// Random SOS with `count` squares of random bases.
inline SosPoly random_sos(std::mt19937& rng, std::size_t nvars, unsigned max_degree, unsigned count) {
  SosPoly s(nvars);
  std::uniform_int_distribution<int> w(1, 6);
  for (unsigned k = 0; k < count; ++k) {
    Polynomial b = random_polynomial(rng, nvars, max_degree, 3);
    if (b.is_zero()) b = Polynomial::constant(nvars, 1);
    s.add_square(ratio(w(rng), 2), b);
  }
  return s;
}

// ------------------------------------------------------------- property suites

struct SuiteResult {
  unsigned cases = 0;
  unsigned failures = 0;
  std::string first_failure;
  void fail(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
};

/// Commutativity, associativity, distributivity, identities, and agreement
/// with pointwise evaluation.
SuiteResult ring_law_suite(unsigned cases, unsigned seed);
/// dehomogenize(homogenize(p)) == p, homogeneity and degree of the result.
SuiteResult homogenize_suite(unsigned cases, unsigned seed);
/// recompose(even_odd_split(p)) == p, and the parts agree with the
/// (p(x,y) +- p(x,-y))/2 oracle.
SuiteResult even_odd_suite(unsigned cases, unsigned seed);
/// Random valid certificates verify; every single corruption is rejected.
SuiteResult fuzz_rejection_suite(unsigned cases, unsigned seed);

/// Applies one random corruption that provably changes the expansion.
ModuleCert corrupt(const ModuleCert& cert, std::mt19937& rng, std::string& what);

}  // namespace poscert::test
