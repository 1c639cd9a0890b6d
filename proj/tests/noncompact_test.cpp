#include "poscert/noncompact.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace poscert;
using namespace poscert::test;

namespace {

const std::vector<std::string> X{"x"};

TEST(Intervals, ParseAndPrint) {
  const IntervalUnion K = IntervalUnion::parse("[0,1]u[2,inf)");
  EXPECT_EQ(K.pieces().size(), 2u);
  EXPECT_EQ(K.to_string(), "[0,1]u[2,inf)");
  EXPECT_FALSE(K.compact());
  EXPECT_TRUE(IntervalUnion::parse("[-1/2, 3]").compact());
  EXPECT_TRUE(K.contains(Rational(1, 2)));
  EXPECT_FALSE(K.contains(Rational(3, 2)));
  EXPECT_TRUE(K.contains(100));
  EXPECT_EQ(IntervalUnion::parse("(-inf,inf)").to_string(), "(-inf,inf)");
}

TEST(Intervals, Invalid) {
  EXPECT_THROW(IntervalUnion::parse("[0,1"), ParseError);
  EXPECT_THROW(IntervalUnion::parse("[2,1]"), ParseError);
  EXPECT_THROW(IntervalUnion::parse("[0,2]u[1,3]"), ParseError);
  EXPECT_THROW(IntervalUnion::parse("[0,1]u[1,3]"), ParseError);
  EXPECT_THROW(IntervalUnion({Interval{Rational(2), Rational(1)}}), std::invalid_argument);
}

TEST(NaturalGenerators, Shapes) {
  const auto g = natural_generators(IntervalUnion::parse("[0,1]u[2,inf)"));
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0], P("x", X));
  EXPECT_EQ(g[1], P("x^2 - 3*x + 2", X));
  const auto h = natural_generators(IntervalUnion::parse("(-inf,-1]u[1,3]"));
  ASSERT_EQ(h.size(), 2u);
  EXPECT_EQ(h[0], P("(x+1)*(x-1)", X));
  EXPECT_EQ(h[1], P("3 - x", X));
  EXPECT_TRUE(natural_generators(IntervalUnion::parse("(-inf,inf)")).empty());
}

TEST(SemialgebraicSet, Recompute) {
  EXPECT_EQ(semialgebraic_set_1d({P("x", X), P("(x-1)^3", X)}), IntervalUnion::parse("[1,inf)"));
  EXPECT_EQ(semialgebraic_set_1d({P("x^2 - 3*x + 2", X)}), IntervalUnion::parse("(-inf,1]u[2,inf)"));
  EXPECT_THROW(semialgebraic_set_1d({P("x^2 - 2", X)}), std::invalid_argument);
}

TEST(Putinar1d, Verdicts) {
  EXPECT_TRUE(is_putinar_1d({P("x", X)}).putinar);
  const auto v = is_putinar_1d({P("x", X), P("(x-1)^3", X)});
  EXPECT_FALSE(v.putinar);
  ASSERT_EQ(v.missing.size(), 1u);
  EXPECT_EQ(v.missing[0], P("x - 1", X));
  EXPECT_TRUE(is_putinar_1d({P("3*x", X), P("2*x^2 - 6*x + 4", X)}).putinar);
  const auto d = is_putinar_1d({P("x", X)}, IntervalUnion::parse("[1,inf)"));
  EXPECT_FALSE(d.declared_matches);
  EXPECT_THROW(is_putinar_1d({P("x", X), P("1 - x", X)}), std::invalid_argument);
}

TEST(Stability, Multipliers) {
  EXPECT_EQ(stability_multipliers(parse_directions("(1,0);(0,1)")).multipliers, (std::vector<long>{1, 1}));
  EXPECT_EQ(stability_multipliers(parse_directions("(0,1);(1,-1)")).multipliers, (std::vector<long>{2, 1}));
  const StabilityResult r = stability_multipliers(parse_directions("(-1,2);(1,-1)"));
  EXPECT_EQ(r.multipliers, (std::vector<long>{2, 3}));
  EXPECT_EQ(r.sum, (std::vector<long>{1, 1}));
}

TEST(Stability, RefutationCarriesDual) {
  const auto T = parse_directions("(1,-1);(-1,1)");
  const StabilityResult r = stability_multipliers(T);
  ASSERT_EQ(r.status, SearchStatus::Refuted);
  ASSERT_EQ(r.dual.size(), 2u);
  for (const auto& z : T) EXPECT_LE(r.dual[0] * z[0] + r.dual[1] * z[1], 0);
  EXPECT_TRUE(r.dual[0] >= 0 && r.dual[1] >= 0 && (r.dual[0] > 0 || r.dual[1] > 0));
}

TEST(Stability, BoundExhaustedOrCapped) {
  // Needs r2 > 30 r1: beyond a bound of 20.
  EXPECT_EQ(stability_multipliers(parse_directions("(-30,1);(1,0)"), 20).status, SearchStatus::Inconclusive);
  EXPECT_THROW(stability_multipliers(parse_directions("(-30,1);(1,0);(0,-1);(0,-1);(0,-1);(0,-1)"), 20), ResourceLimit);
  EXPECT_THROW(stability_multipliers({}), std::invalid_argument);
  EXPECT_THROW(stability_multipliers(parse_directions("(1,0);(0,0)")), std::invalid_argument);
}

TEST(Stability, ParseDirections) {
  EXPECT_EQ(parse_directions("(0,1);(1,-1)"), parse_directions(" (0,1)  (1, -1) "));
  EXPECT_EQ(parse_directions("(2,1)").front(), (Direction{2, 1}));
  EXPECT_THROW(parse_directions(""), ParseError);
  EXPECT_THROW(parse_directions("(1,x)"), ParseError);
  EXPECT_THROW(parse_directions("(1,0)x"), ParseError);
  EXPECT_THROW(parse_directions("1,0"), ParseError);
}

TEST(Stability, DegreeBounds) {
  EXPECT_EQ(stability_degree_bound(parse_directions("(2,1)"), {1}, 4), 8);
  EXPECT_EQ(stability_degree_bound(parse_directions("(1,1)"), {1}, 7), 7);
  // Relabeled: z1 = (1,-1), z2 = (0,1), r = (1,2): d (1 + 2) / min(1, 1).
  EXPECT_EQ(stability_degree_bound(parse_directions("(0,1);(1,-1)"), {2, 1}, 2), 6);
  EXPECT_THROW(stability_degree_bound(parse_directions("(1,-1);(-1,1)"), {1, 1}, 2), std::invalid_argument);
}

TEST(Desquare, SpecExamples) {
  // x + y^2 = y^2 * 1 + 1 * x over {x}.
  const GeneratorSet S(2, {P("x")});
  ModuleCert c{P("x + y^2"), {SosPoly::square(P("y")), SosPoly::constant(2, 1)}};
  const Desquared d = eliminate_squares(c, S, 1);
  EXPECT_EQ(d.cert.target, P("x + y"));
  ASSERT_EQ(d.S.size(), 2u);
  EXPECT_EQ(d.S.generators()[1], P("y"));
  EXPECT_TRUE(verify_preorder(d.cert, d.S).accepted());
}

TEST(Desquare, SquareWithOddPart) {
  // (x + y)^2 + (x - y)^2 = 2x^2 + 2y^2 over no generators.
  const GeneratorSet S(2, {});
  ModuleCert c{P("2*x^2 + 2*y^2"), {SosPoly::square(P("x + y")) + SosPoly::square(P("x - y"))}};
  const Desquared d = eliminate_squares(c, S, 1);
  EXPECT_EQ(d.cert.target, P("2*x^2 + 2*y"));
  EXPECT_TRUE(verify_preorder(d.cert, d.S).accepted());
}

TEST(Desquare, Rejects) {
  const GeneratorSet odd(2, {P("x + y")});
  ModuleCert c{P("x + y + 1"), {SosPoly::constant(2, 1), SosPoly::constant(2, 1)}};
  EXPECT_THROW(eliminate_squares(c, odd, 1), std::invalid_argument);
  const GeneratorSet S(2, {P("x")});
  ModuleCert bad{P("x + 2"), {SosPoly::constant(2, 1), SosPoly::constant(2, 1)}};
  EXPECT_THROW(eliminate_squares(bad, S, 1), std::invalid_argument);
}

TEST(Automorphism, ShearAndAffine) {
  const Automorphism phi = Automorphism::shear(2, 1, P("x^2"));
  EXPECT_EQ(phi.apply(P("y")), P("y - x^2"));
  for (std::size_t i = 0; i < 2; ++i)
    EXPECT_EQ(phi.forward()[i].substitute(phi.inverse()), Polynomial::variable(2, i));
  const Automorphism a = Automorphism::affine({{1, 1}, {0, 2}}, {1, 0});
  for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(a.inverse()[i].substitute(a.forward()), Polynomial::variable(2, i));
  EXPECT_THROW(Automorphism::affine({{1, 1}, {2, 2}}, {0, 0}), std::invalid_argument);
  EXPECT_THROW(Automorphism::shear(2, 1, P("y")), std::invalid_argument);
}

TEST(Automorphism, PreservesVerification) {
  const GeneratorSet S(2, {P("x"), P("1 - x"), P("y")});
  PreorderCert c{P("x*y - x^2*y + 1"), {{0, SosPoly::constant(2, 1)}, {7, SosPoly::constant(2, 1)}}};
  ASSERT_TRUE(verify_preorder(c, S).accepted());
  const auto t = substitute_automorphism(c, S, Automorphism::shear(2, 1, P("x^2")));
  EXPECT_TRUE(verify_preorder(t.cert, t.S).accepted());
  EXPECT_EQ(t.S.generators()[2], P("y - x^2"));
}

TEST(LogPolyhedron, Unimodular) {
  const auto u = unimodular_cone_check(parse_log_polyhedron("# strip\nineq: 0 1 1\nineq: 1 1 1\n"));
  EXPECT_TRUE(u.unimodular);
  ASSERT_TRUE(u.witness);
  EXPECT_EQ(std::abs(u.determinant), 1);
  EXPECT_FALSE(unimodular_cone_check(parse_log_polyhedron("ineq: 1 0 1\nineq: 1 2 1\n")).unimodular);
  EXPECT_THROW(parse_log_polyhedron("ineq: 1 0\n"), ParseError);
  EXPECT_THROW(unimodular_cone_check(LogPolyhedron{}), std::invalid_argument);
}

TEST(LogPolyhedron, TripleIntersections) {
  // x^2 <= 1, y^2 <= 1, x^2 y^2 <= 1 all meet at (1, 1).
  const auto t = triple_intersection_check(parse_log_polyhedron("ineq: 1 0 1\nineq: 0 1 1\nineq: 1 1 1\n"));
  EXPECT_FALSE(t.passes);
  ASSERT_TRUE(t.witness);
  EXPECT_TRUE(triple_intersection_check(parse_log_polyhedron("ineq: 1 0 1\nineq: 0 1 1\nineq: 1 1 2\n")).passes);
}

}  // namespace
