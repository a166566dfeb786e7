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

#include "test_support.hpp"

namespace bctk::testing {
namespace {

class SuiteTest : public ::testing::TestWithParam<std::tuple<std::string, verify::Backend>> {};

verify::Config small_config(verify::Backend backend) {
  verify::Config cfg;
  cfg.seed = 11;
  cfg.trials = 40;
  cfg.max_dim = 3;
  cfg.backend = backend;
  cfg.threads = 2;
  return cfg;
}

TEST_P(SuiteTest, Passes) {
  const auto& [suite, backend] = GetParam();
  const auto report = verify::run(suite, small_config(backend));
  EXPECT_TRUE(report.ok()) << report.to_json().dump(2);
  EXPECT_EQ(report.suite, suite);
  EXPECT_LE(report.max_abs_dev, backend == verify::Backend::rational ? 0.0 : 1e-9);
}

INSTANTIATE_TEST_SUITE_P(All, SuiteTest,
                         ::testing::Combine(::testing::ValuesIn(verify::suite_names()),
                                            ::testing::Values(verify::Backend::rational, verify::Backend::floating)),
                         [](const auto& info) {
                           return std::get<0>(info.param) +
                                  (std::get<1>(info.param) == verify::Backend::rational ? "_rational" : "_float");
                         });

TEST(Verify, ReportsAreDeterministicAndIndependentOfThreads) {
  auto cfg = small_config(verify::Backend::rational);
  cfg.threads = 1;
  const auto one = verify::run("all", cfg).to_json().dump();
  cfg.threads = 3;
  const auto three = verify::run("all", cfg).to_json().dump();
  EXPECT_EQ(one, three);
  EXPECT_EQ(verify::run("all", cfg).to_json().dump(), three);
}

TEST(Verify, AllAggregatesEverySuite) {
  const auto report = verify::run("all", small_config(verify::Backend::rational));
  ASSERT_EQ(report.parts.size(), verify::suite_names().size());
  for (std::size_t k = 0; k < report.parts.size(); ++k) EXPECT_EQ(report.parts[k].suite, verify::suite_names()[k]);
  const auto j = report.to_json();
  EXPECT_EQ(j["failure_count"], 0);
  EXPECT_TRUE(j["failures"].empty());
}

TEST(Verify, CorruptedSwapIsCaughtWithAWitness) {
  auto cfg = small_config(verify::Backend::rational);
  cfg.fault = verify::Fault::corrupt_swap;
  const auto report = verify::run("diagram", cfg);
  ASSERT_FALSE(report.ok());
  ASSERT_FALSE(report.failures.empty());
  const auto& f = report.failures.front();
  EXPECT_TRUE(f.witness.contains("check"));
  EXPECT_NE(f.lhs, f.rhs);
  EXPECT_FALSE(verify::run("swap", cfg).ok());
}

TEST(Verify, RejectsBadConfigurations) {
  auto cfg = small_config(verify::Backend::rational);
  EXPECT_THROW(verify::run("nonsense", cfg), Error);
  cfg.max_dim = 1;
  EXPECT_THROW(verify::run("codec", cfg), Error);
}

}  // namespace
}  // namespace bctk::testing
