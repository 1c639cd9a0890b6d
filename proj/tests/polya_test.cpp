#include "support.hpp"

#include <gtest/gtest.h>

using namespace poscert;
using namespace poscert::test;

namespace {

Monomial M(std::vector<std::uint32_t> e) { return Monomial(std::move(e)); }

TEST(Polya, AlreadyPositive) {
  const PolyaResult r = polya_exponent(P("x^2 + x*y + y^2"), 5);
  EXPECT_TRUE(r.found());
  EXPECT_EQ(r.N, 0u);
}

TEST(Polya, ExponentThreeWithTrace) {
  const PolyaResult r = polya_exponent(P("x^2 - x*y + y^2"), 5);
  ASSERT_TRUE(r.found());
  EXPECT_EQ(r.N, 3u);
  ASSERT_EQ(r.failures.size(), 3u);
  EXPECT_EQ(r.failures[0].monomial, M({1, 1}));
  EXPECT_EQ(r.failures[0].coefficient, -1);
  EXPECT_EQ(r.failures[2].monomial, M({2, 2}));
  EXPECT_EQ(r.failures[2].coefficient, 0);
}

TEST(Polya, NonNegativeCriterion) {
  const PolyaResult r = polya_exponent(P("x^2 - x*y + y^2"), 5, PolyaCriterion::NonNegative);
  ASSERT_TRUE(r.found());
  EXPECT_EQ(r.N, 1u);
}

TEST(Polya, RefutedWithWitness) {
  const Polynomial f = P("x^2 - 3*x*y + y^2");
  const PolyaResult r = polya_exponent(f, 30);
  ASSERT_EQ(r.status, SearchStatus::Refuted);
  ASSERT_TRUE(r.witness);
  EXPECT_LE(f.evaluate(*r.witness), 0);
  EXPECT_EQ(f.evaluate(*r.witness), r.witness_value);
}

TEST(Polya, InconclusiveAtCap) {
  // (x - y)^2 + x y / 100: positive on the simplex but needs a large N.
  const PolyaResult r = polya_exponent(P("x^2 - 199/100*x*y + y^2"), 5);
  EXPECT_EQ(r.status, SearchStatus::Inconclusive);
  EXPECT_EQ(r.failures.size(), 6u);
}

TEST(Polya, Preconditions) {
  EXPECT_THROW(polya_exponent(P("x^2 + y"), 5), std::invalid_argument);
  EXPECT_THROW(polya_exponent(Polynomial(2), 5), std::invalid_argument);
}

TEST(Habicht, IdentityAndShapes) {
  const std::vector<std::string> v{"a", "b", "c"};
  for (const Polynomial& f : {P("x^2 + y^2"), P("x^2 - x*y + y^2"), P("x^4 + y^4"),
                              P("a^2 + b^2 + c^2 - a*b", v)}) {
    const HabichtResult r = habicht_certificate(f);
    ASSERT_EQ(r.status, SearchStatus::Found) << r.reason;
    const HabichtCert& h = *r.cert;
    EXPECT_TRUE(verify_habicht(h).accepted());
    EXPECT_EQ((h.M2.expand() + h.R2.expand()) * f, h.M1.expand() + h.R1.expand());
    EXPECT_TRUE(h.M1.monomial_squares_only());
    EXPECT_TRUE(h.M2.monomial_squares_only());
    const GeneratorSet none(f.nvars(), {});
    EXPECT_TRUE(verify_module(h.numerator(), none).accepted());
    EXPECT_TRUE(verify_module(h.denominator(), none).accepted());
  }
}

TEST(Habicht, RejectsIndefiniteAndBadInput) {
  EXPECT_NE(habicht_certificate(P("x^2 - y^2")).status, SearchStatus::Found);
  EXPECT_THROW(habicht_certificate(P("x^3 + y^3")), std::invalid_argument);
  EXPECT_THROW(habicht_certificate(P("x^2 + 1")), std::invalid_argument);
  HabichtOptions small;
  small.max_vars = 1;
  EXPECT_THROW(habicht_certificate(P("x^2 + y^2"), small), ResourceLimit);
}

TEST(Habicht, TamperedCertificateRejected) {
  HabichtCert h = *habicht_certificate(P("x^2 - x*y + y^2")).cert;
  h.R1.add_square(1, P("x"));
  EXPECT_FALSE(verify_habicht(h).accepted());
}

TEST(Handelman, Interval) {
  const std::vector<std::string> v{"x"};
  const SimplexSpec s = SimplexSpec::from_lambdas({P("x", v), P("1 - x", v)});
  const HandelmanResult r = handelman_simplex(P("x^2 - x + 1/2", v), s, 10);
  ASSERT_EQ(r.status, SearchStatus::Found);
  EXPECT_EQ(expand(*r.cert), P("x^2 - x + 1/2", v));
  for (const auto& [alpha, a] : r.cert->coefficients) EXPECT_GT(a, 0);
}

TEST(Handelman, TriangleFromVertices) {
  const SimplexSpec s = SimplexSpec::from_vertices({{0, 0}, {2, 0}, {0, 2}});
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(s.lambdas()[i].evaluate(s.vertices()[j]), i == j ? 1 : 0);
  const Polynomial f = P("x^2 + y^2 - x*y + 1/4");
  const HandelmanResult r = handelman_simplex(f, s, 20);
  ASSERT_EQ(r.status, SearchStatus::Found);
  EXPECT_EQ(expand(*r.cert), f);
  const GeneratorSet S = lambda_generators(*r.cert);
  EXPECT_TRUE(verify_preorder(to_preorder(*r.cert, S), S).accepted());
}

TEST(Handelman, RefutesNegative) {
  const std::vector<std::string> v{"x"};
  const SimplexSpec s = SimplexSpec::standard(1);
  EXPECT_EQ(handelman_simplex(P("x - 1/2", v), s, 10).status, SearchStatus::Refuted);
}

TEST(Handelman, DegenerateSimplex) {
  EXPECT_THROW(SimplexSpec::from_vertices({{0, 0}, {1, 1}, {2, 2}}), std::invalid_argument);
  EXPECT_THROW(SimplexSpec::from_lambdas({P("x"), P("y"), P("x^2")}), std::invalid_argument);
}

TEST(Sampling, Grids) {
  EXPECT_EQ(box_grid(2, 1, 4).size(), 25u);
  const auto simplex = simplex_grid({{0, 0}, {1, 0}, {0, 1}}, 4);
  EXPECT_EQ(simplex.size(), 15u);
  for (const auto& p : simplex) EXPECT_LE(p[0] + p[1], 1);
  for (const auto& d : direction_grid(3, 4, true)) {
    Rational m = 0;
    for (const auto& c : d) m = std::max(m, Rational(abs(c)));
    EXPECT_EQ(m, 1);
  }
}

}  // namespace
