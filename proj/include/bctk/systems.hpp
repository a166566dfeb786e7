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

// System bookkeeping: elementary factors, the composite dimension rule, and
// the bijective label codec between nested pure-state labels and global
// labels 1..N.
//
// Composite labels are canonically left-nested: (((i1,i2);s1,i3);s2 ...).
// The pairwise codec is
//
//     Q(i, j, s) = 2·N2·(i − 1) + 2j + s − 1,
//
// a bijection [1..N1]×[1..N2]×{0,1} → [1..2·N1·N2].

#pragma once

#include <cctype>
#include <cstdint>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "bctk/scalar.hpp"

namespace bctk {

using Label = std::uint64_t;  // 1-based global label
using Bit = std::uint8_t;

class SystemShape {
 public:
  SystemShape() = default;

  /// Factors equal to 1 are stripped: composing with the trivial system
  /// changes nothing.
  SystemShape(std::initializer_list<std::uint32_t> elems) : SystemShape(std::vector<std::uint32_t>(elems)) {}
  explicit SystemShape(const std::vector<std::uint32_t>& elems) {
    for (auto n : elems) {
      if (n == 0) throw DimensionError("elementary dimension must be positive");
      if (n > 1) elems_.push_back(n);
    }
  }

  static SystemShape trivial() { return {}; }
  static SystemShape elementary(std::uint32_t n) { return SystemShape{n}; }

  const std::vector<std::uint32_t>& elems() const { return elems_; }
  std::size_t parts() const { return elems_.size(); }
  bool is_trivial() const { return elems_.empty(); }
  bool is_elementary() const { return elems_.size() == 1; }

  /// Global dimension N = 2^(p−1)·Π nᵢ (1 for the trivial system).
  Label dim() const {
    if (elems_.empty()) return 1;
    Label n = elems_[0];
    for (std::size_t k = 1; k < elems_.size(); ++k) n = 2 * n * elems_[k];
    return n;
  }

  /// Shape made of the first `count` factors.
  SystemShape prefix(std::size_t count) const {
    return SystemShape(std::vector<std::uint32_t>(elems_.begin(), elems_.begin() + static_cast<long>(count)));
  }

  friend SystemShape concat(const SystemShape& a, const SystemShape& b) {
    auto elems = a.elems_;
    elems.insert(elems.end(), b.elems_.begin(), b.elems_.end());
    return SystemShape(elems);
  }

  friend bool operator==(const SystemShape&, const SystemShape&) = default;

  std::string to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t k = 0; k < elems_.size(); ++k) os << (k ? "," : "") << elems_[k];
    os << ')';
    return os.str();
  }

 private:
  std::vector<std::uint32_t> elems_;
};

/// D(n, m): 2nm when both are non-trivial, otherwise the non-trivial one.
inline Label composite_dim(Label n, Label m) {
  if (n == 1) return m;
  if (m == 1) return n;
  return 2 * n * m;
}

inline Label bct_dim(const SystemShape& shape) { return shape.dim(); }

struct Decoded {
  Label i;
  Label j;
  Bit s;
  friend bool operator==(const Decoded&, const Decoded&) = default;
};

inline Label q_encode(Label n1, Label n2, Label i, Label j, Bit s) {
  if (i < 1 || i > n1 || j < 1 || j > n2 || s > 1) {
    throw Error("q_encode argument out of range: (" + std::to_string(i) + "," + std::to_string(j) + "," +
                std::to_string(s) + ") for dims " + std::to_string(n1) + "," + std::to_string(n2));
  }
  return 2 * n2 * (i - 1) + 2 * j + s - 1;
}

inline Decoded q_decode(Label n1, Label n2, Label q) {
  if (q < 1 || q > 2 * n1 * n2) {
    throw Error("q_decode label " + std::to_string(q) + " out of range for dims " + std::to_string(n1) + "," +
                std::to_string(n2));
  }
  Label z = q - 1;
  return Decoded{z / (2 * n2) + 1, (z / 2) % n2 + 1, static_cast<Bit>(z % 2)};
}

/// Nested pure label: indices i₁..i_p and section bits s₁..s_{p−1}, read as
/// the left-nested record (..((i₁,i₂);s₁,i₃);s₂..).
struct PureLabel {
  std::vector<std::uint32_t> idx;
  std::vector<Bit> bits;

  friend bool operator==(const PureLabel&, const PureLabel&) = default;
  friend auto operator<=>(const PureLabel&, const PureLabel&) = default;

  bool fits(const SystemShape& shape) const {
    if (idx.size() != shape.parts()) return false;
    if (shape.parts() == 0) return bits.empty();
    if (bits.size() + 1 != idx.size()) return false;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (idx[k] < 1 || idx[k] > shape.elems()[k]) return false;
    }
    for (auto b : bits) {
      if (b > 1) return false;
    }
    return true;
  }

  /// Textual syntax: (i), ((i,j);s), (((i,j);s,k);t).
  std::string to_string() const {
    if (idx.empty()) return "()";
    std::string text = std::to_string(idx[0]);
    if (idx.size() == 1) return "(" + text + ")";
    for (std::size_t k = 1; k < idx.size(); ++k) {
      text = "(" + text + "," + std::to_string(idx[k]) + ");" + std::to_string(bits[k - 1]);
    }
    return "(" + text + ")";
  }
};

/// Parses the textual label syntax. Whitespace is ignored.
inline PureLabel parse_label(const std::string& raw) {
  std::string text;
  for (char c : raw) {
    if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
  }
  std::size_t pos = 0;
  auto fail = [&](const std::string& what) -> Error {
    return Error("malformed label '" + raw + "': " + what + " at offset " + std::to_string(pos));
  };
  auto expect = [&](char c) {
    if (pos >= text.size() || text[pos] != c) throw fail(std::string("expected '") + c + "'");
    ++pos;
  };
  auto number = [&]() -> std::uint64_t {
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) throw fail("expected integer");
    return std::stoull(text.substr(start, pos - start));
  };
  // Grammar: label := "(" body ")" ; body := INT | "(" body "," INT ")" ";" BIT
  PureLabel out;
  auto body = [&](auto&& self) -> void {
    if (pos < text.size() && text[pos] == '(') {
      ++pos;
      self(self);
      expect(',');
      out.idx.push_back(static_cast<std::uint32_t>(number()));
      expect(')');
      expect(';');
      auto bit = number();
      if (bit > 1) throw fail("section bit must be 0 or 1");
      out.bits.push_back(static_cast<Bit>(bit));
    } else {
      out.idx.push_back(static_cast<std::uint32_t>(number()));
    }
  };
  expect('(');
  body(body);
  expect(')');
  if (pos != text.size()) throw fail("trailing characters");
  return out;
}

/// Left-nested fold of q_encode.
inline Label flatten_label(const SystemShape& shape, const PureLabel& label) {
  if (!label.fits(shape)) throw Error("label " + label.to_string() + " does not fit shape " + shape.to_string());
  if (shape.is_trivial()) return 1;
  Label acc = label.idx[0];
  Label acc_dim = shape.elems()[0];
  for (std::size_t k = 1; k < shape.parts(); ++k) {
    const Label n = shape.elems()[k];
    acc = q_encode(acc_dim, n, acc, label.idx[k], label.bits[k - 1]);
    acc_dim = 2 * acc_dim * n;
  }
  return acc;
}

inline PureLabel unflatten_label(const SystemShape& shape, Label q) {
  if (q < 1 || q > shape.dim()) {
    throw Error("global label " + std::to_string(q) + " out of range for shape " + shape.to_string());
  }
  PureLabel out;
  const std::size_t p = shape.parts();
  if (p == 0) return out;
  out.idx.resize(p);
  out.bits.resize(p - 1);
  std::vector<Label> prefix_dims(p);
  prefix_dims[0] = shape.elems()[0];
  for (std::size_t k = 1; k < p; ++k) prefix_dims[k] = 2 * prefix_dims[k - 1] * shape.elems()[k];
  Label acc = q;
  for (std::size_t k = p - 1; k >= 1; --k) {
    auto d = q_decode(prefix_dims[k - 1], shape.elems()[k], acc);
    out.idx[k] = static_cast<std::uint32_t>(d.j);
    out.bits[k - 1] = d.s;
    acc = d.i;
  }
  out.idx[0] = static_cast<std::uint32_t>(acc);
  return out;
}

/// Every pure label of a shape, in global-label order.
inline std::vector<PureLabel> all_labels(const SystemShape& shape) {
  std::vector<PureLabel> out;
  const Label n = shape.dim();
  out.reserve(n);
  for (Label q = 1; q <= n; ++q) out.push_back(unflatten_label(shape, q));
  return out;
}

/// Global label, in the canonical form of concat(a, b), of the bipartite pure
/// label (x, y)_s with x a global label of `a` and y one of `b`.
///
/// When `b` is itself composite the pair is reassociated with
/// (A,(B',j)_u)_s = ((A,B')_s,j)_{s⊕u}, so the section bit s is inserted
/// after A's factors and XORed into every internal bit of `b`.
inline Label join_label(const SystemShape& a, const SystemShape& b, Label x, Label y, Bit s) {
  if (a.is_trivial()) return y;
  if (b.is_trivial()) return x;
  auto la = unflatten_label(a, x);
  auto lb = unflatten_label(b, y);
  PureLabel joined;
  joined.idx = la.idx;
  joined.idx.insert(joined.idx.end(), lb.idx.begin(), lb.idx.end());
  joined.bits = la.bits;
  joined.bits.push_back(s);
  for (auto u : lb.bits) joined.bits.push_back(static_cast<Bit>(u ^ s));
  return flatten_label(concat(a, b), joined);
}

/// Inverse of join_label. For a trivial factor the returned bit is 0.
inline Decoded split_label(const SystemShape& a, const SystemShape& b, Label q) {
  if (a.is_trivial()) return {1, q, 0};
  if (b.is_trivial()) return {q, 1, 0};
  auto whole = unflatten_label(concat(a, b), q);
  const std::size_t p = a.parts();
  PureLabel la;
  PureLabel lb;
  la.idx.assign(whole.idx.begin(), whole.idx.begin() + static_cast<long>(p));
  lb.idx.assign(whole.idx.begin() + static_cast<long>(p), whole.idx.end());
  la.bits.assign(whole.bits.begin(), whole.bits.begin() + static_cast<long>(p - 1));
  const Bit s = whole.bits[p - 1];
  for (std::size_t k = p; k < whole.bits.size(); ++k) lb.bits.push_back(static_cast<Bit>(whole.bits[k] ^ s));
  return {flatten_label(a, la), flatten_label(b, lb), s};
}

/// Tripartite labels in the two groupings of n1⊠n2⊠n3.
struct LeftNested {  // ((i,j)_inner, k)_outer
  std::uint32_t i, j, k;
  Bit inner, outer;
  friend bool operator==(const LeftNested&, const LeftNested&) = default;
};
struct RightNested {  // (i, (j,k)_inner)_outer
  std::uint32_t i, j, k;
  Bit inner, outer;
  friend bool operator==(const RightNested&, const RightNested&) = default;
};

/// ((i,j)_s, k)_t = (i, (j,k)_{s⊕t})_s
inline RightNested reassoc_label(std::uint32_t n1, std::uint32_t n2, std::uint32_t n3, const LeftNested& l) {
  if (l.i < 1 || l.i > n1 || l.j < 1 || l.j > n2 || l.k < 1 || l.k > n3 || l.inner > 1 || l.outer > 1) {
    throw Error("invalid tripartite label");
  }
  return RightNested{l.i, l.j, l.k, static_cast<Bit>(l.inner ^ l.outer), l.inner};
}

inline LeftNested reassoc_label_inv(std::uint32_t n1, std::uint32_t n2, std::uint32_t n3, const RightNested& r) {
  if (r.i < 1 || r.i > n1 || r.j < 1 || r.j > n2 || r.k < 1 || r.k > n3 || r.inner > 1 || r.outer > 1) {
    throw Error("invalid tripartite label");
  }
  return LeftNested{r.i, r.j, r.k, r.outer, static_cast<Bit>(r.inner ^ r.outer)};
}

}  // namespace bctk
