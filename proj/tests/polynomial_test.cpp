#include "support.hpp"

#include <gtest/gtest.h>

using namespace poscert;
using namespace poscert::test;

namespace {

Monomial M(std::vector<std::uint32_t> e) { return Monomial(std::move(e)); }

TEST(Rational, ParseAndFormat) {
  EXPECT_EQ(to_string(parse_rational("6/4")), "3/2");
  EXPECT_EQ(to_string(parse_rational("-5")), "-5");
  EXPECT_EQ(to_string(ratio(-8, 8)), "-1");
  EXPECT_EQ(to_string(ratio(0, 8)), "0");
  EXPECT_THROW(parse_rational("1.5"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(ratio(1, 0), std::invalid_argument);
}

TEST(Rational, Rationalize) {
  EXPECT_EQ(rationalize(0.333333333, 100), Rational(1, 3));
  EXPECT_EQ(rationalize(-2.5, 10), Rational(-5, 2));
  Rational root;
  EXPECT_TRUE(exact_sqrt(Rational(9, 16), root));
  EXPECT_EQ(root, Rational(3, 4));
  EXPECT_FALSE(exact_sqrt(Rational(2), root));
  const Rational s = sqrt_upper(Rational(2));
  EXPECT_GE(s * s, 2);
}

TEST(Monomial, GradedLexOrder) {
  EXPECT_LT(M({0, 1}), M({1, 0}));
  EXPECT_LT(M({1, 0}), M({0, 2}));
  EXPECT_LT(M({1, 1}), M({2, 0}));
  EXPECT_TRUE(M({2, 4}).is_square());
  EXPECT_FALSE(M({2, 3}).is_square());
  EXPECT_TRUE(M({1, 0}).divides(M({2, 1})));
  EXPECT_EQ((M({1, 2}) * M({3, 0})).degree(), 6u);
}

TEST(Polynomial, ParseFormatRoundTrip) {
  const Polynomial p = P("3/2*x^2*y - y + 7");
  EXPECT_EQ(format_polynomial(p, {"x", "y"}), "3/2*x^2*y - y + 7");
  EXPECT_EQ(P(format_polynomial(p, {"x", "y"})), p);
  EXPECT_EQ(P("(x+y)^2"), P("x^2 + 2*x*y + y^2"));
  EXPECT_EQ(P("2*(x-1)*(x+1)"), P("2*x^2 - 2"));
  EXPECT_EQ(format_polynomial(Polynomial(2), {"x", "y"}), "0");
}

TEST(Polynomial, ParseErrors) {
  EXPECT_THROW(P("1.5*x"), ParseError);
  EXPECT_THROW(P("x + z"), ParseError);
  EXPECT_THROW(P("x^"), ParseError);
  EXPECT_THROW(P("(x + y"), ParseError);
  try {
    parse_polynomial("x + + ", {"x"}, 4);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
    EXPECT_GT(e.column(), 0u);
  }
}

TEST(Polynomial, Arithmetic) {
  const Polynomial a = P("x - y"), b = P("x + y");
  EXPECT_EQ(a * b, P("x^2 - y^2"));
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_EQ(a.pow(0), Polynomial::constant(2, 1));
  EXPECT_EQ(a.scale(Rational(1, 2)), P("1/2*x - 1/2*y"));
  EXPECT_EQ(P("x^2*y + 1").degree(), 3);
  EXPECT_EQ(Polynomial(2).degree(), -1);
  EXPECT_EQ(P("x^3 + x*y").leading_term().first, M({3, 0}));
  const std::vector<Rational> pt{Rational(1, 2), 3};
  EXPECT_EQ(P("x^2*y + 1").evaluate(pt), Rational(7, 4));
}

TEST(Polynomial, SubstituteAndFlips) {
  const Polynomial p = P("x^2 + x*y");
  const std::vector<Polynomial> images{P("x + 1"), P("y")};
  EXPECT_EQ(p.substitute(images), P("x^2 + 2*x + 1 + x*y + y"));
  const int signs[2] = {1, -1};
  EXPECT_EQ(sign_flip(p, signs), P("x^2 - x*y"));
}

TEST(Polynomial, Homogenize) {
  const Polynomial p = P("x^2 + y + 1");
  const std::vector<std::string> v3{"t", "x", "y"};
  EXPECT_EQ(homogenize(p, false), P("x^2 + t*y + t^2", v3));
  EXPECT_EQ(homogenize(P("x^3 + 1", {"x"}), true), P("t*x^3 + t^4", {"t", "x"}));
  EXPECT_EQ(dehomogenize(homogenize(p, true), 0), p);
  EXPECT_EQ(homogenize_to(p, 4, 2), P("x^2*t^2 + y*t^3 + t^4", {"x", "y", "t"}));
  EXPECT_EQ(highest_degree_part(P("x^2 - x*y + x + 5")), P("x^2 - x*y"));
}

TEST(Polynomial, EvenOddSplit) {
  const Polynomial p = P("x*y^3 + y^2 + x + y");
  const EvenOddSplit s = even_odd_split(p, 1);
  EXPECT_EQ(s.even, P("y + x"));
  EXPECT_EQ(s.odd, P("x*y + 1"));
  EXPECT_EQ(recompose_even_odd(s, 1), p);
  EXPECT_EQ(inflate_variable(P("x + y"), 1, 2), P("x + y^2"));
  EXPECT_EQ(deflate_variable(P("x + y^4"), 1), P("x + y^2"));
  EXPECT_THROW(deflate_variable(P("y^3"), 1), std::invalid_argument);
}

TEST(Polynomial, ElementarySymmetric) {
  const std::vector<std::string> v{"a", "b", "c"};
  const std::vector<Polynomial> ps{P("a", v), P("b", v), P("c", v)};
  EXPECT_EQ(elementary_symmetric(ps, 1), P("a + b + c", v));
  EXPECT_EQ(elementary_symmetric(ps, 2), P("a*b + a*c + b*c", v));
  EXPECT_EQ(elementary_symmetric(ps, 3), P("a*b*c", v));
  // Oracle: coefficients of (t + a)(t + b)(t + c) read off at t = 1.
  const auto all = all_elementary_symmetric(ps);
  ASSERT_EQ(all.size(), 4u);
  Polynomial sum(3);
  for (const auto& e : all) sum += e;
  EXPECT_EQ(sum, P("(1 + a)*(1 + b)*(1 + c)", v));
}

TEST(Polynomial, MonomialEnumeration) {
  // C(n + d - 1, d)
  EXPECT_EQ(monomials_of_degree(3, 4).size(), 15u);
  EXPECT_EQ(monomials_up_to_degree(2, 3).size(), 10u);
  const auto deg2 = monomials_of_degree(2, 2);
  EXPECT_EQ(deg2.front(), M({2, 0}));
  EXPECT_EQ(deg2.back(), M({0, 2}));
  EXPECT_EQ(weighted_degree(P("x^2*y + y^3"), Grading{{2, 1}}), 5);
  EXPECT_EQ(sum_of_squares_of_variables(2), P("x^2 + y^2"));
}

}  // namespace
