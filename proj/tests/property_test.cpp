#include "support.hpp"

#include <gtest/gtest.h>

using namespace poscert::test;

namespace {

void expect_clean(const SuiteResult& r) {
  EXPECT_GE(r.cases, 200u);
  EXPECT_EQ(r.failures, 0u) << r.first_failure;
}

TEST(Properties, RingLaws) { expect_clean(ring_law_suite(300, 11)); }
TEST(Properties, HomogenizeRoundTrip) { expect_clean(homogenize_suite(300, 12)); }
TEST(Properties, EvenOddRecomposition) { expect_clean(even_odd_suite(300, 13)); }
TEST(Properties, FuzzRejection) { expect_clean(fuzz_rejection_suite(300, 14)); }

TEST(Properties, ParseFormatRoundTrip) {
  std::mt19937 rng(15);
  const std::vector<std::string> vars{"x", "y", "z"};
  for (int k = 0; k < 200; ++k) {
    const poscert::Polynomial p = random_polynomial(rng, 3, 5, 6);
    EXPECT_EQ(P(poscert::format_polynomial(p, vars), vars), p);
  }
}

TEST(Properties, CertificateTextRoundTrip) {
  std::mt19937 rng(16);
  for (int k = 0; k < 200; ++k) {
    const poscert::GeneratorSet S(2, {random_polynomial(rng, 2, 2, 3) + P("x")});
    poscert::ModuleCert c{poscert::Polynomial(2), {random_sos(rng, 2, 2, 2), random_sos(rng, 2, 2, 2)}};
    c.target = poscert::expand(c, S);
    const std::string text = poscert::serialize_certificate(poscert::make_cert_file({"x", "y"}, S, c));
    const poscert::CertFile back = poscert::parse_certificate(text);
    EXPECT_EQ(poscert::serialize_certificate(back), text);
    EXPECT_TRUE(back.verify().accepted());
  }
}

}  // namespace
