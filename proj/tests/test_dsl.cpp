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
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_support.hpp"

namespace bctk::testing {
namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<dsl::Diagnostic> diagnostics_of(const std::string& text) {
  try {
    dsl::parse_and_check(text);
  } catch (const dsl::ParseError& e) {
    return e.diagnostics();
  }
  return {};
}

std::string first_message(const std::string& text) {
  const auto d = diagnostics_of(text);
  return d.empty() ? "" : d.front().message;
}

template <class S>
class DslTest : public ::testing::Test {};
TYPED_TEST_SUITE(DslTest, Backends);

TEST(Parse, SystemDeclaration) {
  const auto prog = dsl::parse("system a = elem 2");
  ASSERT_EQ(prog.decls.size(), 1U);
  const auto& d = std::get<dsl::SystemDecl>(prog.decls[0]);
  EXPECT_EQ(d.name.name, "a");
  EXPECT_EQ(d.elem, 2U);
}

TYPED_TEST(DslTest, AtomicGateBecomesATensor) {
  using S = TypeParam;
  const auto prog = dsl::parse_and_check("system a = elem 2\ngate t : a -> a = atomic 1 -> 2 tau 1 w 1/2\n");
  const auto t = dsl::box_process<S>(prog, "t").as_tensor();
  bct::TransformationTensor<S> expected(SystemShape{2}, SystemShape{2});
  expected.add(1, 2, 1, q<S>(1, 2));
  EXPECT_TRUE(same(t, expected));
}

TEST(Check, ShapeErrorNamesTheStage) {
  const auto d = diagnostics_of(slurp("circuits/shape_error.bct"));
  ASSERT_EQ(d.size(), 1U);
  EXPECT_EQ(d[0].span.line, 6U);
  EXPECT_NE(d[0].message.find("shape error at stage 2"), std::string::npos) << d[0].message;
}

TEST(Parse, EverySyntaxErrorHasASpan) {
  const auto d = diagnostics_of(slurp("circuits/syntax_error.bct"));
  ASSERT_EQ(d.size(), 3U);
  for (const auto& x : d) {
    EXPECT_GE(x.span.line, 2U);
    EXPECT_GE(x.span.column, 1U);
  }
  EXPECT_EQ(first_message("# nothing here\n"), "no declarations");
  EXPECT_NE(first_message("system a = elem\n"), "");
  EXPECT_NE(first_message("system a = elem 2 extra\n"), "");
  EXPECT_NE(first_message("system a = elem 2\nstate r : a = pure ((1,1;0)\n"), "");
}

TEST(Check, NameErrors) {
  EXPECT_EQ(first_message("system a = elem 2\nsystem a = elem 3\n"), "duplicate name 'a'");
  EXPECT_EQ(first_message("state r : a = pure 1\n"), "undeclared system 'a'");
  EXPECT_EQ(first_message("system a = elem 2\ncircuit c = a ; r\n"), "undeclared box 'r'");
  EXPECT_EQ(first_message("system a = elem 2\nstate r : a = pure 1\neval r\n"), "undeclared circuit 'r'");
  EXPECT_NE(first_message("system a = elem 2\nstate r : a = pure 1\nstate s : r = pure 1\n").find("not a system"),
            std::string::npos);
}

TEST(Check, ValueErrors) {
  const std::string a = "system a = elem 2\nsystem aa = a * a\n";
  EXPECT_NE(first_message(a + "state r : a = pure 3\n").find("out of range"), std::string::npos);
  EXPECT_NE(first_message(a + "state r : aa = pure ((1,3);0)\n").find("does not fit"), std::string::npos);
  EXPECT_NE(first_message(a + "state r : a = mix 2/3 1 + 2/3 2\n").find("more than 1"), std::string::npos);
  EXPECT_NE(first_message(a + "effect e : a = mix 3/2 1\n").find("exceed 1"), std::string::npos);
  EXPECT_NE(first_message(a + "gate g : a -> a = atomic 1 -> 1 tau 0 w 1 + 1 -> 2 tau 1 w 1/2\n").find("row 1"),
            std::string::npos);
  EXPECT_NE(first_message(a + "gate g : a -> aa = id\n").find("equal"), std::string::npos);
  EXPECT_NE(first_message(a + "gate g : a -> a = rev 1 1 bits 0 0\n"), "");
  EXPECT_NE(first_message(a + "gate g : aa -> aa = swap a aa\n").find("swap"), std::string::npos);
}

TEST(Printer, RoundTripsTheShippedCircuits) {
  for (const auto& entry : std::filesystem::directory_iterator("circuits")) {
    if (entry.path().extension() != ".bct") continue;
    const auto text = slurp(entry.path().string());
    dsl::Program prog;
    try {
      prog = dsl::parse(text);
    } catch (const dsl::ParseError&) {
      continue;  // the negative examples
    }
    const auto printed = dsl::print(prog);
    EXPECT_EQ(dsl::print(dsl::parse(printed)), printed) << entry.path();
    // Up to whitespace, the printed form is the source without comments.
    std::string source, out;
    std::istringstream lines(text);
    for (std::string line; std::getline(lines, line);) {
      source += line.substr(0, line.find('#'));
    }
    for (char ch : printed) {
      if (!std::isspace(static_cast<unsigned char>(ch))) out += ch;
    }
    source.erase(std::remove_if(source.begin(), source.end(), [](unsigned char ch) { return std::isspace(ch); }),
                 source.end());
    EXPECT_EQ(out, source) << entry.path();
  }
}

TYPED_TEST(DslTest, ExampleValues) {
  using S = TypeParam;
  const auto prog = dsl::parse_and_check(slurp("circuits/examples.bct"));
  const std::map<std::string, S> expected = {
      {"sharp", S(1)},        {"pairing", q<S>(1, 2)},  {"moved", S(0)},
      {"leak", q<S>(1, 2)},   {"wires", S(1)},          {"fused", S(1)},
      {"same_section", S(1)}, {"other_section", S(0)}, {"flat", q<S>(1, 8)}};
  ASSERT_EQ(prog.evals.size(), expected.size());
  for (const auto& name : prog.evals) {
    const auto r = dsl::evaluate<S>(prog, name, 1e-9);
    ASSERT_TRUE(r.bct.is_scalar()) << name;
    EXPECT_TRUE(same(r.bct.as_scalar(), expected.at(name))) << name;
    EXPECT_TRUE(r.agree) << name;
  }
}

TYPED_TEST(DslTest, TourValue) {
  using S = TypeParam;
  const auto prog = dsl::parse_and_check(slurp("circuits/tour.bct"));
  const auto r = dsl::evaluate<S>(prog, "c", 1e-9);
  EXPECT_TRUE(same(r.bct.as_scalar(), q<S>(1, 12)));
  EXPECT_TRUE(r.agree);
}

TYPED_TEST(DslTest, OpenCircuitsAgreeToo) {
  using S = TypeParam;
  const auto prog = dsl::parse_and_check(slurp("circuits/examples.bct") +
                                         "circuit open = not | b ; flip | b ; sw\n"
                                         "gate kick : a -> a = atomic 1 -> 1 tau 1 w 1\n"
                                         "circuit prep = one ; kick\n");
  for (const std::string name : {"open", "prep"}) {
    const auto r = dsl::evaluate<S>(prog, name, 1e-9);
    EXPECT_FALSE(r.bct.is_scalar());
    EXPECT_TRUE(r.agree) << name;
  }
}

TYPED_TEST(DslTest, RandomCircuitsAgreeAcrossBackends) {
  using S = TypeParam;
  for (std::uint64_t k = 0; k < 100; ++k) {
    rng::Rng rng(61, "dsl-corpus", k);
    const auto text = dsl::random_circuit(rng, 3);
    const auto prog = dsl::parse_and_check(text);
    const auto r = dsl::evaluate<S>(prog, "c", 1e-9);
    ASSERT_TRUE(r.bct.is_scalar()) << text;
    EXPECT_TRUE(r.agree) << text;
    EXPECT_LE(r.max_abs_dev, 1e-9);
  }
}

TEST(Embed, IdentityGate) {
  const auto prog = dsl::parse_and_check(slurp("circuits/examples.bct"));
  const auto j = dsl::embed<Rational>(prog, "ident");
  EXPECT_EQ(j["in"]["ontic_dim"], 4);
  EXPECT_EQ(j["in"]["wires"], nlohmann::json::array({2, 2}));
  const auto m = classical::from_json<Rational>(j["map"]);
  EXPECT_EQ(m, classical::ClassicalMap<Rational>::identity(4));
  EXPECT_THROW(dsl::embed<Rational>(prog, "one"), Error);
  EXPECT_THROW(dsl::embed<Rational>(prog, "nope"), Error);
}

TEST(Embed, SwapAndAtomicImages) {
  const auto prog = dsl::parse_and_check(
      "system a = elem 2\nsystem aa = a * a\n"
      "gate sw : aa -> aa = swap a a\n"
      "gate t : a -> a = atomic 1 -> 2 tau 1 w 1\n");
  const auto sw = classical::from_json<Rational>(dsl::embed<Rational>(prog, "sw")["map"]);
  EXPECT_EQ(sw.in_dim(), 16U);
  EXPECT_TRUE(sw.is_permutation());
  EXPECT_EQ(sw, classical::wire_permutation<Rational>({2, 2, 2, 2}, {2, 3, 0, 1}));
  // (1, b) ↦ (2, b ⊕ 1)
  classical::ClassicalMap<Rational> atom(4, 4);
  atom.at(3, 0) = 1;
  atom.at(2, 1) = 1;
  EXPECT_EQ(classical::from_json<Rational>(dsl::embed<Rational>(prog, "t")["map"]), atom);
}

}  // namespace
}  // namespace bctk::testing
