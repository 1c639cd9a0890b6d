#include "support.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace poscert;
using namespace poscert::test;

namespace {

const char* kSphereProblem = "vars: x y\ngen: 1-x^2-y^2\ntarget: 2-x\n";

TEST(ProblemFile, Parse) {
  const Problem p = parse_problem(kSphereProblem);
  EXPECT_EQ(p.vars, (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(p.S.size(), 1u);
  EXPECT_EQ(p.f, P("2 - x"));
  EXPECT_EQ(p.mode, CertMode::Module);
  EXPECT_EQ(p.degree_cap, 8u);
}

TEST(ProblemFile, AllKeys) {
  const Problem p = parse_problem(
      "# comment\nvars: a b\ngen: a\nmode: preorder\nball: 9/4\ndegree_cap: 12\ngrid: 10\n"
      "vertex: 0 0\nvertex: 1 0\nvertex: 0 1\npoly: a*b + 1  # trailing\n");
  EXPECT_EQ(p.mode, CertMode::Preorder);
  ASSERT_TRUE(p.ball);
  EXPECT_EQ(*p.ball, Rational(9, 4));
  EXPECT_EQ(p.degree_cap, 12u);
  EXPECT_EQ(p.grid, 10u);
  EXPECT_EQ(p.vertices.size(), 3u);
  EXPECT_EQ(p.f, P("a*b + 1", {"a", "b"}));
}

TEST(ProblemFile, Errors) {
  EXPECT_THROW(parse_problem("vars: x\ntarget: 1.5*x\n"), ParseError);
  EXPECT_THROW(parse_problem("vars: x\ntarget: x + z\n"), ParseError);
  EXPECT_THROW(parse_problem("vars: x\n"), ParseError);
  EXPECT_THROW(parse_problem("target: x\nvars: x\n"), ParseError);
  EXPECT_THROW(parse_problem("vars: x\ntarget: x\ntarget: x\n"), ParseError);
  EXPECT_THROW(parse_problem("vars: x\nfoo: 1\ntarget: x\n"), ParseError);
  EXPECT_THROW(parse_problem("vars: x x\ntarget: x\n"), ParseError);
  EXPECT_THROW(parse_problem("vars: x\ndegree_cap: 2\ntarget: x^4\n"), ParseError);
  try {
    parse_problem("vars: x y\ngen: x\ntarget: x +* y\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_GT(e.column(), 8u);
  }
}

TEST(ProblemFile, RoundTrip) {
  const Problem p = parse_problem(kSphereProblem);
  const std::string text = serialize_problem(p);
  const Problem q = parse_problem(text);
  EXPECT_EQ(serialize_problem(q), text);
  EXPECT_EQ(q.f, p.f);
  EXPECT_EQ(q.S.generators(), p.S.generators());
}

TEST(CertificateFile, RoundTripModule) {
  const GeneratorSet S(2, {P("1 - x^2 - y^2")});
  SosPoly s0(2);
  s0.add_square(Rational(1, 2), P("x - 1"));
  s0.add_square(Rational(1, 2), P("y"));
  const CertFile f = make_cert_file({"x", "y"}, S, ModuleCert{P("1 - x"), {s0, SosPoly::constant(2, Rational(1, 2))}});
  EXPECT_TRUE(f.verify().accepted());
  const std::string text = serialize_certificate(f);
  const CertFile g = parse_certificate(text);
  EXPECT_EQ(serialize_certificate(g), text);
  EXPECT_TRUE(g.verify().accepted());
}

TEST(CertificateFile, RoundTripPreorderAndHomogeneous) {
  const GeneratorSet S(1, {P("x", {"x"}), P("1 - x", {"x"})});
  PreorderCert c{P("x - x^2 + 1", {"x"}), {{0, SosPoly::constant(1, 1)}, {3, SosPoly::constant(1, 1)}}};
  const std::string text = serialize_certificate(make_cert_file({"x"}, S, c));
  EXPECT_NE(text.find("sigma 11:"), std::string::npos);
  EXPECT_EQ(serialize_certificate(parse_certificate(text)), text);

  const GeneratorSet H(2, {P("x^2 + y^2")}, true);
  ModuleCert h{P("x^4 + y^4 + x^2*y^2"), {SosPoly::square(P("y^2")), SosPoly::square(P("x"))}};
  const std::string htext = serialize_certificate(make_cert_file({"x", "y"}, H, h));
  EXPECT_NE(htext.find("homogeneous: true"), std::string::npos);
  const CertFile back = parse_certificate(htext);
  EXPECT_TRUE(back.S.homogeneous());
  EXPECT_TRUE(back.verify().accepted());
}

TEST(CertificateFile, Errors) {
  EXPECT_THROW(parse_certificate("mode: module\nvars: x\ntarget: x\nsigma 0:\n  weight -1 square x\n"), ParseError);
  EXPECT_THROW(parse_certificate("mode: module\nvars: x\ntarget: x\nsigma 3:\n  weight 1 square x\n"), ParseError);
  EXPECT_THROW(parse_certificate("mode: module\nvars: x\ntarget: x\n  weight 1 square x\n"), ParseError);
  EXPECT_THROW(parse_certificate("mode: other\nvars: x\ntarget: x\n"), ParseError);
}

TEST(Files, AtomicWriteAndRead) {
  const auto path = std::filesystem::temp_directory_path() / "poscert_io_test.txt";
  write_file_atomic(path.string(), "abc\n");
  EXPECT_EQ(read_file(path.string()), "abc\n");
  std::filesystem::remove(path);
  EXPECT_THROW(read_file(path.string()), std::runtime_error);
}

}  // namespace
