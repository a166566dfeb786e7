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

using classical::ClassicalMap;

template <class S>
class ClassicalTest : public ::testing::Test {};
TYPED_TEST_SUITE(ClassicalTest, Backends);

// Naive triple loop, kept separate from the zero-skipping product.
template <class S>
ClassicalMap<S> matmul(const ClassicalMap<S>& g, const ClassicalMap<S>& f) {
  ClassicalMap<S> out(f.in_dim(), g.out_dim());
  for (std::size_t r = 0; r < g.out_dim(); ++r) {
    for (std::size_t c = 0; c < f.in_dim(); ++c) {
      S acc(0);
      for (std::size_t k = 0; k < g.in_dim(); ++k) acc += g.at(r, k) * f.at(k, c);
      out.at(r, c) = acc;
    }
  }
  return out;
}

template <class S>
ClassicalMap<S> random_map(rng::Rng& rng, std::size_t in, std::size_t out) {
  ClassicalMap<S> m(in, out);
  for (std::size_t r = 0; r < out; ++r) {
    for (std::size_t c = 0; c < in; ++c) m.at(r, c) = rng::random_weight<S>(rng);
  }
  return m;
}

TYPED_TEST(ClassicalTest, SequentialIsMatrixProductInDiagramOrder) {
  using S = TypeParam;
  // f: 2 -> 3, g: 3 -> 2
  ClassicalMap<S> f(2, 3, {q<S>(1), q<S>(0), q<S>(0), q<S>(1, 2), q<S>(0), q<S>(1, 2)});
  ClassicalMap<S> g(3, 2, {q<S>(1), q<S>(1), q<S>(0), q<S>(0), q<S>(0), q<S>(1)});
  const auto gf = classical::compose_seq(f, g);
  ASSERT_EQ(gf.in_dim(), 2u);
  ASSERT_EQ(gf.out_dim(), 2u);
  EXPECT_TRUE(same(gf.at(0, 0), q<S>(1)));
  EXPECT_TRUE(same(gf.at(0, 1), q<S>(1, 2)));
  EXPECT_TRUE(same(gf.at(1, 0), q<S>(0)));
  EXPECT_TRUE(same(gf.at(1, 1), q<S>(1, 2)));

  rng::Rng rng(11);
  for (int k = 0; k < 20; ++k) {
    const auto a = static_cast<std::size_t>(rng.uniform(1, 4));
    const auto b = static_cast<std::size_t>(rng.uniform(1, 4));
    const auto c = static_cast<std::size_t>(rng.uniform(1, 4));
    const auto f2 = random_map<S>(rng, a, b);
    const auto g2 = random_map<S>(rng, b, c);
    EXPECT_TRUE(same(classical::compose_seq(f2, g2), matmul(g2, f2)));
  }
}

TYPED_TEST(ClassicalTest, ParallelIsKroneckerLeftOuter) {
  using S = TypeParam;
  rng::Rng rng(12);
  for (int k = 0; k < 20; ++k) {
    const auto f = random_map<S>(rng, static_cast<std::size_t>(rng.uniform(1, 3)), static_cast<std::size_t>(rng.uniform(1, 3)));
    const auto g = random_map<S>(rng, static_cast<std::size_t>(rng.uniform(1, 3)), static_cast<std::size_t>(rng.uniform(1, 3)));
    const auto fg = classical::compose_par(f, g);
    for (std::size_t a = 0; a < f.out_dim(); ++a) {
      for (std::size_t b = 0; b < g.out_dim(); ++b) {
        for (std::size_t c = 0; c < f.in_dim(); ++c) {
          for (std::size_t d = 0; d < g.in_dim(); ++d) {
            EXPECT_TRUE(same(fg.at(a * g.out_dim() + b, c * g.in_dim() + d), f.at(a, c) * g.at(b, d)));
          }
        }
      }
    }
  }
}

TYPED_TEST(ClassicalTest, InterchangeLaw) {
  using S = TypeParam;
  rng::Rng rng(13);
  for (int k = 0; k < 20; ++k) {
    const auto f1 = random_map<S>(rng, 2, 3);
    const auto g1 = random_map<S>(rng, 3, 2);
    const auto f2 = random_map<S>(rng, 2, 2);
    const auto g2 = random_map<S>(rng, 2, 1);
    const auto lhs = classical::compose_seq(classical::compose_par(f1, f2), classical::compose_par(g1, g2));
    const auto rhs = classical::compose_par(classical::compose_seq(f1, g1), classical::compose_seq(f2, g2));
    EXPECT_TRUE(same(lhs, rhs));
  }
}

TYPED_TEST(ClassicalTest, Predicates) {
  using S = TypeParam;
  EXPECT_TRUE(ClassicalMap<S>::identity(3).is_permutation());
  EXPECT_TRUE(ClassicalMap<S>::identity(3).is_stochastic());
  ClassicalMap<S> half(2, 2, {q<S>(1, 2), q<S>(0), q<S>(0), q<S>(1, 2)});
  EXPECT_TRUE(half.is_substochastic());
  EXPECT_FALSE(half.is_stochastic());
  ClassicalMap<S> over(1, 2, {q<S>(2, 3), q<S>(2, 3)});
  EXPECT_FALSE(over.is_substochastic());
  ClassicalMap<S> negative(1, 1, {q<S>(-1)});
  EXPECT_FALSE(negative.is_nonnegative());
  EXPECT_TRUE(ClassicalMap<S>(2, 3).is_zero());
  EXPECT_TRUE(same(over.column_sum(0), q<S>(4, 3)));
}

TYPED_TEST(ClassicalTest, PermutationMaps) {
  using S = TypeParam;
  const auto p = classical::permutation_map<S>(std::vector<std::uint32_t>{3, 1, 2});
  EXPECT_TRUE(p.is_permutation());
  EXPECT_TRUE(same(p.at(2, 0), q<S>(1)));
  EXPECT_TRUE(same(p.at(0, 1), q<S>(1)));
  EXPECT_THROW(classical::permutation_map<S>(std::vector<std::uint32_t>{1, 1}), Error);

  // Swapping two wires of sizes 2 and 3: |a,b> -> |b,a>.
  const auto w = classical::wire_permutation<S>({2, 3}, {1, 0});
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 3; ++b) EXPECT_TRUE(same(w.at(b * 2 + a, a * 3 + b), q<S>(1)));
  }
  EXPECT_TRUE(w.is_permutation());
  // A swap commutes with Kronecker products of states.
  const auto x = ClassicalMap<S>::state({q<S>(1, 3), q<S>(2, 3)});
  const auto y = ClassicalMap<S>::state({q<S>(1, 2), q<S>(1, 4), q<S>(1, 4)});
  EXPECT_TRUE(same(classical::compose_seq(classical::compose_par(x, y), w), classical::compose_par(y, x)));
}

TYPED_TEST(ClassicalTest, ChoiPairAndTrace) {
  using S = TypeParam;
  for (std::size_t d = 1; d <= 5; ++d) EXPECT_TRUE(classical::snake_check<S>(d));
  ClassicalMap<S> m(3, 3, {q<S>(1, 2), q<S>(1), q<S>(0), q<S>(0), q<S>(1, 3), q<S>(1), q<S>(1), q<S>(0), q<S>(1, 6)});
  EXPECT_TRUE(same(classical::choi_close(m), q<S>(1)));
  // choi_close equals closing the map with the Choi pair explicitly.
  const auto closed = classical::compose_seq(classical::compose_seq(classical::choi_vector<S>(3),
                                                                    classical::compose_par(m, ClassicalMap<S>::identity(3))),
                                             classical::choi_covector<S>(3));
  EXPECT_TRUE(same(closed.at(0, 0), classical::choi_close(m)));
  EXPECT_THROW(classical::choi_close(ClassicalMap<S>(2, 3)), DimensionError);
}

TYPED_TEST(ClassicalTest, Rank) {
  using S = TypeParam;
  std::vector<std::vector<S>> rows = {{q<S>(1), q<S>(2), q<S>(3)}, {q<S>(2), q<S>(4), q<S>(6)}, {q<S>(0), q<S>(1), q<S>(1)}};
  EXPECT_EQ(classical::rank(rows), 2u);
  rows.push_back({q<S>(1), q<S>(0), q<S>(0)});
  EXPECT_EQ(classical::rank(rows), 3u);
  EXPECT_EQ(classical::rank(std::vector<std::vector<S>>{}), 0u);
}

TYPED_TEST(ClassicalTest, JsonRoundTrip) {
  using S = TypeParam;
  ClassicalMap<S> m(2, 3, {q<S>(1, 2), q<S>(0), q<S>(1, 3), q<S>(1), q<S>(1, 6), q<S>(0)});
  EXPECT_EQ(classical::from_json<S>(classical::to_json(m)), m);
}

TYPED_TEST(ClassicalTest, ShapeErrors) {
  using S = TypeParam;
  EXPECT_THROW(classical::compose_seq(ClassicalMap<S>(2, 3), ClassicalMap<S>(2, 2)), DimensionError);
  EXPECT_THROW(ClassicalMap<S>(0, 2), DimensionError);
  EXPECT_THROW(ClassicalMap<S>(2, 2, {q<S>(1)}), DimensionError);
}

TEST(ClassicalRational, ExactArithmeticHasNoDrift) {
  // One third summed three times is exactly one.
  ClassicalMap<Rational> third(3, 1, {q<Rational>(1, 3), q<Rational>(1, 3), q<Rational>(1, 3)});
  const auto u = ClassicalMap<Rational>::state({q<Rational>(1), q<Rational>(1), q<Rational>(1)});
  EXPECT_EQ(classical::compose_seq(u, third).at(0, 0), Rational(1));
}

}  // namespace
}  // namespace bctk::testing
