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

TEST(Dimension, CompositeRule) {
  for (Label n = 1; n <= 6; ++n) {
    for (Label m = 1; m <= 6; ++m) {
      const Label expected = n == 1 ? m : m == 1 ? n : 2 * n * m;
      EXPECT_EQ(composite_dim(n, m), expected) << n << "," << m;
      EXPECT_EQ(concat(SystemShape{static_cast<std::uint32_t>(n)}, SystemShape{static_cast<std::uint32_t>(m)}).dim(), expected);
    }
  }
}

TEST(Dimension, ManyParts) {
  EXPECT_EQ(SystemShape::trivial().dim(), 1u);
  EXPECT_EQ((SystemShape{3}).dim(), 3u);
  EXPECT_EQ((SystemShape{2, 3, 2}).dim(), 4u * 12u);
  EXPECT_EQ((SystemShape{2, 1, 3}), (SystemShape{2, 3}));
  EXPECT_THROW(SystemShape({2, 0}), DimensionError);
  EXPECT_EQ((SystemShape{2, 3}).to_string(), "(2,3)");
  EXPECT_EQ((SystemShape{2, 3, 4}).prefix(2), (SystemShape{2, 3}));
}

TEST(Codec, EncodesInLexicographicOrder) {
  // Walking (i, j, s) lexicographically visits 1, 2, ..., 2nm.
  for (Label n = 1; n <= 4; ++n) {
    for (Label m = 1; m <= 4; ++m) {
      Label expected = 1;
      for (Label i = 1; i <= n; ++i) {
        for (Label j = 1; j <= m; ++j) {
          for (Bit s = 0; s <= 1; ++s) {
            EXPECT_EQ(q_encode(n, m, i, j, s), expected);
            EXPECT_EQ(q_decode(n, m, expected), (Decoded{i, j, s}));
            ++expected;
          }
        }
      }
    }
  }
  EXPECT_EQ(q_encode(2, 2, 1, 1, 0), 1u);
  EXPECT_EQ(q_encode(2, 2, 2, 2, 1), 8u);
  EXPECT_EQ(q_encode(3, 2, 2, 1, 1), 6u);
  EXPECT_THROW(q_encode(2, 2, 3, 1, 0), Error);
  EXPECT_THROW(q_decode(2, 2, 9), Error);
}

TEST(Labels, TextRoundTrip) {
  for (const auto* text : {"(1)", "((1,2);1)", "(((2,1);0,3);1)"}) {
    EXPECT_EQ(parse_label(text).to_string(), text);
  }
  EXPECT_EQ(parse_label(" ( ( 1 , 2 ) ; 1 ) "), parse_label("((1,2);1)"));
  EXPECT_THROW(parse_label("((1,2);2)"), Error);
  EXPECT_THROW(parse_label("(1,2)"), Error);
  EXPECT_THROW(parse_label("(1))"), Error);
}

TEST(Labels, FlattenIsABijection) {
  for (const auto& shape : small_shapes(3, 3)) {
    std::set<Label> seen;
    for (const auto& label : all_labels(shape)) {
      ASSERT_TRUE(label.fits(shape));
      const Label qv = flatten_label(shape, label);
      EXPECT_EQ(unflatten_label(shape, qv), label);
      seen.insert(qv);
    }
    EXPECT_EQ(seen.size(), shape.dim()) << shape.to_string();
  }
}

TEST(Labels, BipartiteFlattenIsTheCodec) {
  for (std::uint32_t n = 2; n <= 3; ++n) {
    for (std::uint32_t m = 2; m <= 3; ++m) {
      const SystemShape shape{n, m};
      for (std::uint32_t i = 1; i <= n; ++i) {
        for (std::uint32_t j = 1; j <= m; ++j) {
          for (Bit s = 0; s <= 1; ++s) {
            EXPECT_EQ(flatten_label(shape, PureLabel{{i, j}, {s}}), q_encode(n, m, i, j, s));
          }
        }
      }
    }
  }
}

TEST(Labels, RejectsLabelsThatDoNotFit) {
  EXPECT_THROW(flatten_label(SystemShape{2, 2}, PureLabel{{3, 1}, {0}}), Error);
  EXPECT_THROW(flatten_label(SystemShape{2, 2}, PureLabel{{1}, {}}), Error);
  EXPECT_THROW(unflatten_label(SystemShape{2}, 3), Error);
}

TEST(Labels, JoinAndSplitAreInverse) {
  const auto shapes = small_shapes(3, 2);
  for (const auto& a : shapes) {
    for (const auto& b : shapes) {
      if (a.parts() + b.parts() > 3) continue;
      std::set<Label> seen;
      for (Label x = 1; x <= a.dim(); ++x) {
        for (Label y = 1; y <= b.dim(); ++y) {
          for (Bit s = 0; s <= 1; ++s) {
            const Label joined = join_label(a, b, x, y, s);
            EXPECT_EQ(split_label(a, b, joined), (Decoded{x, y, s}));
            seen.insert(joined);
          }
        }
      }
      EXPECT_EQ(seen.size(), concat(a, b).dim());
    }
  }
}

TEST(Labels, JoinWithTrivialSide) {
  const SystemShape a{3};
  EXPECT_EQ(join_label(SystemShape::trivial(), a, 1, 2, 0), 2u);
  EXPECT_EQ(join_label(a, SystemShape::trivial(), 2, 1, 1), 2u);
}

TEST(Labels, Reassociation) {
  for (std::uint32_t n1 = 2; n1 <= 3; ++n1) {
    for (std::uint32_t n2 = 2; n2 <= 3; ++n2) {
      for (std::uint32_t n3 = 2; n3 <= 3; ++n3) {
        const SystemShape e1{n1}, e2{n2}, e3{n3};
        for (std::uint32_t i = 1; i <= n1; ++i) {
          for (std::uint32_t j = 1; j <= n2; ++j) {
            for (std::uint32_t k = 1; k <= n3; ++k) {
              for (Bit s = 0; s <= 1; ++s) {
                for (Bit t = 0; t <= 1; ++t) {
                  const LeftNested left{i, j, k, s, t};
                  const auto right = reassoc_label(n1, n2, n3, left);
                  EXPECT_EQ(reassoc_label_inv(n1, n2, n3, right), left);
                  // Both groupings name the same canonical label.
                  const Label lq = join_label(concat(e1, e2), e3, join_label(e1, e2, i, j, s), k, t);
                  const Label rq = join_label(e1, concat(e2, e3), i, join_label(e2, e3, j, k, right.inner), right.outer);
                  EXPECT_EQ(lq, rq);
                }
              }
            }
          }
        }
      }
    }
  }
  EXPECT_THROW(reassoc_label(2, 2, 2, LeftNested{3, 1, 1, 0, 0}), Error);
}

}  // namespace
}  // namespace bctk::testing
