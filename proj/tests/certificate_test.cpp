#include "support.hpp"

#include <gtest/gtest.h>

using namespace poscert;
using namespace poscert::test;

namespace {

GeneratorSet sphere() { return GeneratorSet(2, {P("1 - x^2 - y^2")}); }

ModuleCert sphere_cert() {
  SosPoly s0(2);
  s0.add_square(Rational(1, 2), P("x - 1"));
  s0.add_square(Rational(1, 2), P("y"));
  return {P("1 - x"), {s0, SosPoly::constant(2, Rational(1, 2))}};
}

TEST(SosPoly, Basics) {
  SosPoly s(2);
  s.add_square(2, P("x + y"));
  s.add_square(0, P("x"));
  s.add_square(1, Polynomial(2));
  EXPECT_EQ(s.size(), 1u);
  EXPECT_THROW(s.add_square(-1, P("x")), std::invalid_argument);
  EXPECT_EQ(s.expand(), P("2*x^2 + 4*x*y + 2*y^2"));
  EXPECT_EQ(s.times_square(P("x")).expand(), P("2*x^4 + 4*x^3*y + 2*x^2*y^2"));
  EXPECT_EQ(SosPoly::from_square_monomials(P("x^2 + 3*y^4")).expand(), P("x^2 + 3*y^4"));
  EXPECT_THROW(SosPoly::from_square_monomials(P("x*y")), std::invalid_argument);
  EXPECT_THROW(SosPoly::from_square_monomials(P("-x^2")), std::invalid_argument);
}

TEST(SosPoly, Canonical) {
  SosPoly a(2), b(2);
  a.add_square(1, P("2*x + 2"));
  a.add_square(1, P("y"));
  b.add_square(1, P("y"));
  b.add_square(4, P("x + 1"));
  EXPECT_EQ(a.canonical(), b.canonical());
  EXPECT_EQ(a.canonical().expand(), a.expand());
}

TEST(Verify, SphereIdentity) {
  EXPECT_TRUE(verify_module(sphere_cert(), sphere()).accepted());
  EXPECT_EQ(expand(sphere_cert(), sphere()), P("1 - x"));
}

TEST(Verify, MismatchReportsHighestMonomial) {
  ModuleCert bad = sphere_cert();
  bad.target = P("1 - x + x*y");
  const Verdict v = verify_module(bad, sphere());
  EXPECT_EQ(v.status, VerdictStatus::IdentityMismatch);
  ASSERT_TRUE(v.mismatch);
  EXPECT_EQ(*v.mismatch, Monomial(std::vector<std::uint32_t>{1, 1}));
  EXPECT_EQ(v.target_coefficient, 1);
  EXPECT_EQ(v.expansion_coefficient, 0);
}

TEST(Verify, ArityMismatchThrows) {
  ModuleCert bad = sphere_cert();
  bad.sigmas.pop_back();
  EXPECT_THROW(verify_module(bad, sphere()), std::invalid_argument);
}

TEST(Verify, HomogeneousModeNeedsCommonDegree) {
  const GeneratorSet S(2, {P("x^2 + y^2")}, true);
  ModuleCert ok{P("x^4 + x^2*y^2 + x^2"), {}};
  ok.sigmas = {SosPoly::square(P("x^2")) + SosPoly::square(P("x")), SosPoly(2)};
  ok.target = expand(ok, S);
  EXPECT_EQ(verify_module(ok, S).status, VerdictStatus::HomogeneityViolation);
  ModuleCert good{P("x^4 + y^4 + x^2*y^2"), {SosPoly::square(P("y^2")), SosPoly::square(P("x"))}};
  EXPECT_TRUE(verify_module(good, S).accepted());
  EXPECT_THROW(GeneratorSet(2, {P("x^2 + y")}, true), std::invalid_argument);
}

TEST(Verify, Preorder) {
  const GeneratorSet S(1, {P("x", {"x"}), P("1 - x", {"x"})});
  PreorderCert c{P("x - x^2 + 1", {"x"}), {{0, SosPoly::constant(1, 1)}, {3, SosPoly::constant(1, 1)}}};
  EXPECT_TRUE(verify_preorder(c, S).accepted());
  EXPECT_EQ(S.product(3), P("x - x^2", {"x"}));
  EXPECT_THROW(to_module(c, 2), std::invalid_argument);
  const ModuleCert m = to_module(to_preorder(sphere_cert()), 1);
  EXPECT_TRUE(verify_module(m, sphere()).accepted());
}

TEST(Verify, MaskBits) {
  EXPECT_EQ(mask_to_bits(5, 3), "101");
  EXPECT_EQ(bits_to_mask("101"), 5u);
  EXPECT_EQ(bits_to_mask(mask_to_bits(6, 4)), 6u);
}

TEST(CertExpr, FlattenSumsAndScales) {
  const GeneratorSet S = sphere();
  const CertExpr g = CertExpr::generator(S, 1);
  const CertExpr e = CertExpr::sum({CertExpr::scaled(2, g), CertExpr::square_scale(SosPoly::square(P("x")), g),
                                    CertExpr::sos(SosPoly::square(P("y")))});
  const Polynomial want = P("2*(1 - x^2 - y^2) + x^2*(1 - x^2 - y^2) + y^2");
  EXPECT_EQ(e.polynomial(), want);
  const ModuleCert m = flatten_module(e, S);
  EXPECT_EQ(m.target, want);
  EXPECT_TRUE(verify_module(m, S).accepted());
  EXPECT_TRUE(verify_preorder(flatten_preorder(e, S), S).accepted());
}

TEST(CertExpr, ProductRule) {
  const GeneratorSet two(1, {P("x", {"x"}), P("1 - x", {"x"})});
  const CertExpr a = CertExpr::generator(two, 1), b = CertExpr::generator(two, 2);
  const CertExpr ab = product_rule(a, b, two, CertMode::Preorder);
  EXPECT_TRUE(ab.has_products());
  EXPECT_TRUE(verify_preorder(flatten_preorder(ab, two), two).accepted());
  EXPECT_THROW(product_rule(a, b, two, CertMode::Module), std::invalid_argument);
  EXPECT_THROW(flatten_module(ab, two), std::invalid_argument);

  const GeneratorSet one(1, {P("1 - x^2", {"x"})});
  const CertExpr g = CertExpr::generator(one, 1);
  const CertExpr gg = product_rule(g, g, one, CertMode::Module);
  EXPECT_TRUE(verify_module(flatten_module(gg, one), one).accepted());
}

TEST(CertExpr, SuppliedRejectsInvalid) {
  ModuleCert bad = sphere_cert();
  bad.target = P("2 - x");
  EXPECT_THROW(CertExpr::supplied(bad, sphere()), std::invalid_argument);
  EXPECT_NO_THROW(CertExpr::supplied(sphere_cert(), sphere()));
}

TEST(CertExpr, PowerOf) {
  const GeneratorSet S = sphere();
  const CertExpr p = power_of(S.generator(1), 3, CertExpr::generator(S, 1));
  EXPECT_EQ(p.polynomial(), S.generator(1).pow(3));
  EXPECT_TRUE(verify_module(flatten_module(p, S), S).accepted());
}

}  // namespace
