// Copyright 2026 The bctk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <fstream>

#include "test_support.hpp"

namespace bctk::testing {
namespace {

template <class S>
class LctTest : public ::testing::Test {};
TYPED_TEST_SUITE(LctTest, Backends);

template <class S>
std::vector<std::string> axioms(const lct::ViolationCertificate<S>& cert) {
  std::vector<std::string> out;
  for (const auto& v : cert.violations) out.push_back(v.axiom);
  return out;
}

TYPED_TEST(LctTest, DefaultInstanceAnnihilatesProductsButNotBeta) {
  using S = TypeParam;
  const auto inst = lct::default_instance<S>();
  EXPECT_EQ(inst.composite_dim(), 8U);
  for (const auto& row : lct::annihilation_table(inst)) {
    for (const auto& x : row) EXPECT_TRUE(same(x, S(0)));
  }
  // Mixed product states are convex combinations of the table entries.
  const auto mixed = lct::product_state(inst, std::vector<S>{q<S>(1, 3), q<S>(2, 3)}, lct::uniform<S>(2));
  EXPECT_TRUE(same(lct::dot(lct::annihilator(inst), mixed), S(0)));
  EXPECT_TRUE(same(lct::pairing_value(inst, lct::default_beta(inst)), S(1)));
  // b is not the null effect.
  const auto b = lct::annihilator(inst);
  EXPECT_NE(std::count(b.begin(), b.end(), S(1)), 0);
}

TYPED_TEST(LctTest, NonDefaultInstance) {
  using S = TypeParam;
  const auto inst = lct::make_instance<S>(3, 2, 3, {q<S>(1, 2), q<S>(1, 2), S(0)});
  EXPECT_EQ(inst.kappa_perp, (std::vector<S>{S(0), S(0), S(1)}));
  for (const auto& row : lct::annihilation_table(inst)) {
    for (const auto& x : row) EXPECT_TRUE(same(x, S(0)));
  }
  EXPECT_TRUE(same(lct::pairing_value(inst, lct::default_beta(inst)), S(1)));
  const auto cert = lct::falsify(lct::bct_style_candidate(inst));
  EXPECT_EQ(axioms(cert), std::vector<std::string>{"jellyfish-nullity"});
}

TYPED_TEST(LctTest, InstanceErrors) {
  using S = TypeParam;
  EXPECT_THROW(lct::make_instance<S>(1, 2, 2, {S(1), S(0)}), Error);
  EXPECT_THROW(lct::make_instance<S>(2, 2, 2, {S(1)}), DimensionError);
  EXPECT_THROW(lct::make_instance<S>(2, 2, 2, {q<S>(1, 2), q<S>(1, 2)}), Error);
  EXPECT_THROW(lct::make_instance<S>(2, 2, 2, {q<S>(1, 2), q<S>(1, 4)}), Error);
  EXPECT_THROW(lct::make_instance<S>(2, 2, 2, {S(2), q<S>(-1)}), Error);
}

TYPED_TEST(LctTest, BctStyleCandidateBreaksOnlyJellyfishNullity) {
  using S = TypeParam;
  const auto c = lct::bct_style_candidate(lct::default_instance<S>());
  EXPECT_EQ(c.l1, 8U);
  EXPECT_EQ(c.l2, 4U);
  const auto cert = lct::falsify(c);
  EXPECT_EQ(axioms(cert), std::vector<std::string>{"jellyfish-nullity"});
  EXPECT_TRUE(cert.trace_identity);
  EXPECT_TRUE(same(cert.model_pairing, S(1)));
  EXPECT_TRUE(same(cert.trace, S(1)));
}

TYPED_TEST(LctTest, FabricatedCandidateEscapesOnlyThroughAFalseDeclaration) {
  using S = TypeParam;
  auto c = lct::fabricated_candidate<S>();
  EXPECT_TRUE(lct::falsify(c).empty());
  c.theory_pairing = lct::pairing_value(lct::default_instance<S>(), lct::default_beta(lct::default_instance<S>()));
  EXPECT_EQ(axioms(lct::falsify(c)), std::vector<std::string>{"probability-preservation"});
}

TYPED_TEST(LctTest, TraceIdentityHoldsForEveryCandidate) {
  using S = TypeParam;
  for (std::uint64_t k = 0; k < 200; ++k) {
    rng::Rng rng(51, "lct-trace", k);
    const auto c = lct::random_candidate<S>(rng, S(1));
    const auto m = lct::jellyfish_matrix(c);
    S trace(0);
    for (std::size_t y = 0; y < c.l2; ++y) trace += m.at(y, y);
    EXPECT_TRUE(same(classical::choi_close(m), trace));
    EXPECT_TRUE(same(trace, lct::dot(c.xi_b, c.xi_beta)));
  }
}

TYPED_TEST(LctTest, EveryRandomCandidateIsRefuted) {
  using S = TypeParam;
  for (std::uint64_t k = 0; k < 1000; ++k) {
    rng::Rng rng(52, "lct-random", k);
    const auto cert = lct::falsify(lct::random_candidate<S>(rng, S(1)), tol<S>());
    ASSERT_FALSE(cert.empty()) << k;
    EXPECT_TRUE(cert.trace_identity);
  }
}

TYPED_TEST(LctTest, ProductAnnihilationIsChecked) {
  using S = TypeParam;
  auto c = lct::bct_style_candidate(lct::default_instance<S>());
  // A state image that overlaps the support of ξb.
  c.xi_sigma[0].assign(c.l1, S(0));
  c.xi_sigma[0][c.l1 - 1] = S(1);
  const auto cert = lct::falsify(c);
  const auto found = axioms(cert);
  EXPECT_EQ(std::count(found.begin(), found.end(), "product-annihilation"), 2);
  EXPECT_EQ(cert.violations.front().witness["sigma"], 1);
}

TYPED_TEST(LctTest, CandidateJsonRoundTripAndValidation) {
  using S = TypeParam;
  const auto c = lct::bct_style_candidate(lct::default_instance<S>());
  const auto back = lct::candidate_from_json<S>(lct::to_json(c), S(0));
  EXPECT_EQ(back.xi_beta, c.xi_beta);
  EXPECT_EQ(back.xi_b, c.xi_b);
  EXPECT_EQ(back.xi_sigma, c.xi_sigma);
  EXPECT_TRUE(same(back.theory_pairing, c.theory_pairing));

  auto j = lct::to_json(c);
  j.erase("theory_pairing");
  EXPECT_TRUE(same(lct::candidate_from_json<S>(j, q<S>(1, 3)).theory_pairing, q<S>(1, 3)));
  j["L1"] = 3;
  EXPECT_THROW(lct::candidate_from_json<S>(j, S(1)), DimensionError);
  auto neg = lct::to_json(lct::fabricated_candidate<S>());
  neg["xi_b"][0] = ScalarTraits<S>::to_json(q<S>(3, 2));
  EXPECT_THROW(lct::candidate_from_json<S>(neg, S(1)), Error);
}

TEST(LctFiles, ShippedCandidatesBehave) {
  for (const auto& [path, expect_empty] :
       std::vector<std::pair<std::string, bool>>{{"circuits/candidate_bct_style.json", false},
                                                 {"circuits/candidate_fabricated.json", true}}) {
    std::ifstream in(path);
    ASSERT_TRUE(in) << path;
    const auto c = lct::candidate_from_json<Rational>(nlohmann::json::parse(in), Rational(1));
    EXPECT_EQ(lct::falsify(c).empty(), expect_empty) << path;
  }
}

}  // namespace
}  // namespace bctk::testing
