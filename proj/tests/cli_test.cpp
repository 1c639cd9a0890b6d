#include "cli.hpp"
#include "support.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <sstream>

using namespace poscert;
namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("poscert_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& content) {
    const auto path = (dir_ / name).string();
    write_file_atomic(path, content);
    return path;
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(std::vector<std::string> args) {
    std::ostringstream o, e;
    const int code = cli::run(args, o, e);
    out = o.str();
    err = e.str();
    return code;
  }

  fs::path dir_;
  std::string out, err;
};

const char* kSphereCert =
    "mode: module\nvars: x1 x2\ngen: 1 - x1^2 - x2^2\ntarget: 1 - x1\n"
    "sigma 0:\n  weight 1/2 square x1 - 1\n  weight 1/2 square x2\nsigma 1:\n  weight 1/2 square 1\n";

TEST_F(Cli, HelpListsVerbs) {
  EXPECT_EQ(run({"--help"}), 0);
  for (const char* verb : {"verify", "polya", "habicht", "handelman", "putinar", "projective", "natgen", "stability",
                           "desquare", "logpoly", "homogenize"})
    EXPECT_NE(out.find(verb), std::string::npos) << verb;
}

TEST_F(Cli, VerifySphere) {
  EXPECT_EQ(run({"verify", file("s.cert", kSphereCert)}), 0);
  EXPECT_NE(out.find("verdict: verified"), std::string::npos);
  std::string bad = kSphereCert;
  bad.replace(bad.find("1/2 square 1"), 3, "1/3");
  EXPECT_EQ(run({"verify", file("b.cert", bad)}), 1);
  EXPECT_NE(out.find("verdict: failed"), std::string::npos);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run({"verify", file("p.cert", "mode: module\nvars: x\ntarget: 1.5\n")}), 2);
  EXPECT_EQ(run({"verify", path("missing.cert")}), 2);
  EXPECT_EQ(run({"frobnicate"}), 2);
  EXPECT_EQ(run({"polya"}), 2);
  const std::string neg = file("neg.txt", "vars: x y\ntarget: x^2 - 3*x*y + y^2\n");
  EXPECT_EQ(run({"polya", neg}), 1);
  const std::string slow = file("slow.txt", "vars: x y\ntarget: x^2 - 199/100*x*y + y^2\n");
  EXPECT_EQ(run({"polya", slow, "--max-n", "3"}), 1);
  EXPECT_NE(out.find("inconclusive"), std::string::npos);
}

TEST_F(Cli, MaxDegreeOverride) {
  const std::string p = file("p.txt", "vars: x y\ngen: 1 - x^2 - y^2\ntarget: x + 2\n");
  ::setenv("POSCERT_MAX_DEGREE", "1", 1);
  const int capped = run({"putinar", p});
  ::setenv("POSCERT_MAX_DEGREE", "junk", 1);
  const int junk = run({"putinar", p});
  ::unsetenv("POSCERT_MAX_DEGREE");
  EXPECT_EQ(capped, 3);
  EXPECT_EQ(junk, 2);
  EXPECT_EQ(run({"putinar", p}), 0);
}

TEST_F(Cli, PolyaReportsN) {
  EXPECT_EQ(run({"polya", file("f.txt", "vars: x y\ntarget: x^2 - x*y + y^2\n"), "--max-n", "5"}), 0);
  EXPECT_NE(out.find("N: 3\n"), std::string::npos);
  EXPECT_NE(out.find("N=2 fails at x^2*y^2"), std::string::npos);
}

TEST_F(Cli, HabichtEmitsVerifyingFiles) {
  const std::string f = file("f.txt", "vars: x y\ntarget: x^4 - x^2*y^2 + y^4\n");
  EXPECT_EQ(run({"habicht", f, "--emit", path("h")}), 0);
  EXPECT_EQ(run({"verify", path("h.num.cert")}), 0);
  EXPECT_EQ(run({"verify", path("h.den.cert")}), 0);
}

TEST_F(Cli, HandelmanEmitsVerifyingFile) {
  const std::string f = file("f.txt", "vars: x\ngen: x\ngen: 1 - x\ntarget: x^2 - x + 1/2\n");
  EXPECT_EQ(run({"handelman", f, "--emit", path("c.cert")}), 0);
  EXPECT_NE(out.find("a(0,2)=1/2 a(2,0)=1/2"), std::string::npos) << out;
  EXPECT_EQ(run({"verify", path("c.cert")}), 0);
  const std::string v = file("v.txt", "vars: x y\nvertex: 0 0\nvertex: 1 0\nvertex: 0 1\ntarget: x^2 + y^2 + 1/10\n");
  EXPECT_EQ(run({"handelman", v}), 0);
}

TEST_F(Cli, PutinarAndProjective) {
  const std::string p = file("p.txt", "vars: x y\ngen: 1 - x^2 - y^2\ngen: x\ntarget: x + 1/10\n");
  EXPECT_EQ(run({"putinar", p, "--emit", path("p.cert")}), 0);
  EXPECT_EQ(run({"verify", path("p.cert")}), 0);
  const std::string q = file("q.txt", "vars: x y\ngen: x^2 + y^2\ntarget: x^4 + y^4 + x^3*y\n");
  EXPECT_EQ(run({"projective", q, "--emit", path("q.cert")}), 0);
  EXPECT_EQ(run({"verify", path("q.cert")}), 0);
  const std::string r = file("r.txt", "vars: x y\ngen: 1 - x^2 - y^2\ntarget: x\n");
  EXPECT_EQ(run({"putinar", r}), 1);
}

TEST_F(Cli, NatgenStabilityLogpoly) {
  EXPECT_EQ(run({"natgen", "[0,1]u[2,inf)"}), 0);
  EXPECT_NE(out.find("natural_generators: x; x^2 - 3*x + 2"), std::string::npos);
  EXPECT_EQ(run({"natgen", "[0,inf)", "--gens", "x; (x-1)^3"}), 1);
  EXPECT_EQ(run({"natgen", "[0,1"}), 2);
  EXPECT_EQ(run({"stability", "--dirs", "(-1,2);(1,-1)"}), 0);
  EXPECT_NE(out.find("multipliers: (2,3)"), std::string::npos);
  EXPECT_EQ(run({"stability", "--dirs", "(2,1)", "--degree", "4"}), 0);
  EXPECT_NE(out.find("degree_bound: 8"), std::string::npos);
  EXPECT_EQ(run({"stability", "--dirs", "(1,0);(-1,0)"}), 1);
  EXPECT_EQ(run({"logpoly", file("l.txt", "ineq: 0 1 1\nineq: 1 1 1\n")}), 0);
  EXPECT_NE(out.find("unimodular: yes"), std::string::npos);
}

TEST_F(Cli, DesquareAndHomogenize) {
  const std::string c = file("c.cert",
                             "mode: module\nvars: x y\ngen: x\ntarget: x + y^2\n"
                             "sigma 0:\n  weight 1 square y\nsigma 1:\n  weight 1 square 1\n");
  EXPECT_EQ(run({"desquare", c, "--var", "y", "--emit", path("d.cert")}), 0);
  EXPECT_EQ(run({"verify", path("d.cert")}), 0);
  EXPECT_EQ(run({"desquare", c, "--var", "z"}), 2);
  EXPECT_EQ(run({"homogenize", file("h.txt", "vars: x y\ntarget: x^3 + y + 1\n"), "--even"}), 0);
  EXPECT_NE(out.find("target: x0^4 + x0^3*y + x0*x^3"), std::string::npos) << out;
}

TEST_F(Cli, JsonReport) {
  EXPECT_EQ(run({"--json", "polya", file("f.txt", "vars: x y\ntarget: x^2 - x*y + y^2\n")}), 0);
  const auto j = nlohmann::json::parse(out);
  EXPECT_EQ(j["verb"], "polya");
  EXPECT_EQ(j["verdict"], "found");
  EXPECT_EQ(j["details"]["N"], "3");
  EXPECT_FALSE(j.contains("millis"));
  EXPECT_EQ(run({"--json", "--timing", "verify", file("s.cert", kSphereCert)}), 0);
  EXPECT_TRUE(nlohmann::json::parse(out).contains("millis"));
}

TEST_F(Cli, Deterministic) {
  const std::string p = file("p.txt", "vars: x y\ngen: y - x^2\ngen: x - y^2\ntarget: x + y + 1/10\n");
  ASSERT_EQ(run({"--json", "putinar", p, "--emit", path("a.cert")}), 0);
  const std::string first = out;
  ASSERT_EQ(run({"--json", "putinar", p, "--emit", path("b.cert")}), 0);
  std::string second = out;
  second.replace(second.find("b.cert"), 6, "a.cert");
  EXPECT_EQ(first, second);
  EXPECT_EQ(read_file(path("a.cert")), read_file(path("b.cert")));
}

}  // namespace
