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

// Finite classical theory: systems are dimensions, processes are nonnegative
// matrices. States are maps with in_dim = 1 and effects maps with out_dim = 1.
//
// Wire ordering convention for parallel composition (used everywhere in
// bctk): the left factor is the outer index, i.e. for f ⊗ g the combined
// index of (x, y) is x * dim(g) + y.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "bctk/scalar.hpp"

namespace bctk::classical {

template <class S>
class ClassicalMap {
 public:
  ClassicalMap() = default;

  /// Zero map between the given dimensions.
  ClassicalMap(std::size_t in_dim, std::size_t out_dim)
      : in_(in_dim), out_(out_dim), entries_(in_dim * out_dim, S(0)) {
    if (in_dim == 0 || out_dim == 0) throw DimensionError("classical dimensions must be positive");
  }

  /// Builds from row-major entries (out_dim rows, in_dim columns).
  ClassicalMap(std::size_t in_dim, std::size_t out_dim, std::vector<S> entries)
      : in_(in_dim), out_(out_dim), entries_(std::move(entries)) {
    if (in_dim == 0 || out_dim == 0) throw DimensionError("classical dimensions must be positive");
    if (entries_.size() != in_dim * out_dim) throw DimensionError("entry count does not match shape");
  }

  static ClassicalMap state(std::vector<S> weights) {
    auto n = weights.size();
    return ClassicalMap(1, n, std::move(weights));
  }
  static ClassicalMap effect(std::vector<S> weights) {
    auto n = weights.size();
    return ClassicalMap(n, 1, std::move(weights));
  }
  static ClassicalMap identity(std::size_t dim) {
    ClassicalMap m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = S(1);
    return m;
  }
  static ClassicalMap scalar(S value) { return ClassicalMap(1, 1, {std::move(value)}); }

  std::size_t in_dim() const { return in_; }
  std::size_t out_dim() const { return out_; }
  bool is_state() const { return in_ == 1; }
  bool is_effect() const { return out_ == 1; }

  S& at(std::size_t row, std::size_t col) { return entries_[row * in_ + col]; }
  const S& at(std::size_t row, std::size_t col) const { return entries_[row * in_ + col]; }
  std::span<const S> entries() const { return entries_; }

  S column_sum(std::size_t col) const {
    S total(0);
    for (std::size_t r = 0; r < out_; ++r) total += at(r, col);
    return total;
  }

  bool is_nonnegative(double tol = kDefaultTolerance) const {
    return std::none_of(entries_.begin(), entries_.end(),
                        [&](const S& x) { return ScalarTraits<S>::is_negative(x, tol); });
  }

  bool is_substochastic(double tol = kDefaultTolerance) const {
    if (!is_nonnegative(tol)) return false;
    for (std::size_t c = 0; c < in_; ++c) {
      if (ScalarTraits<S>::is_negative(S(1) - column_sum(c), tol)) return false;
    }
    return true;
  }

  bool is_stochastic(double tol = kDefaultTolerance) const {
    if (!is_nonnegative(tol)) return false;
    for (std::size_t c = 0; c < in_; ++c) {
      if (!ScalarTraits<S>::equal(column_sum(c), S(1), tol)) return false;
    }
    return true;
  }

  /// Exactly one entry equal to one per row and per column, zero elsewhere.
  bool is_permutation(double tol = kDefaultTolerance) const {
    if (in_ != out_) return false;
    std::vector<int> row_hits(out_, 0);
    for (std::size_t r = 0; r < out_; ++r) {
      for (std::size_t c = 0; c < in_; ++c) {
        const S& x = at(r, c);
        if (ScalarTraits<S>::is_zero(x, tol)) continue;
        if (!ScalarTraits<S>::equal(x, S(1), tol)) return false;
        ++row_hits[r];
      }
    }
    if (!std::all_of(row_hits.begin(), row_hits.end(), [](int h) { return h == 1; })) return false;
    return is_stochastic(tol);
  }

  bool is_zero(double tol = kDefaultTolerance) const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [&](const S& x) { return ScalarTraits<S>::is_zero(x, tol); });
  }

  ClassicalMap& operator+=(const ClassicalMap& other) {
    require_same_shape(other);
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
    return *this;
  }
  ClassicalMap& operator*=(const S& factor) {
    for (auto& x : entries_) x *= factor;
    return *this;
  }

  friend bool operator==(const ClassicalMap& a, const ClassicalMap& b) {
    return a.in_ == b.in_ && a.out_ == b.out_ && a.entries_ == b.entries_;
  }

  void require_same_shape(const ClassicalMap& other) const {
    if (in_ != other.in_ || out_ != other.out_) {
      throw DimensionError("classical map shape mismatch: " + shape_string() + " vs " + other.shape_string());
    }
  }
  std::string shape_string() const { return std::to_string(in_) + "->" + std::to_string(out_); }

 private:
  std::size_t in_ = 1;
  std::size_t out_ = 1;
  std::vector<S> entries_{S(1)};
};

/// f first, then g: the matrix product g·f.
template <class S>
ClassicalMap<S> compose_seq(const ClassicalMap<S>& f, const ClassicalMap<S>& g) {
  if (f.out_dim() != g.in_dim()) {
    throw DimensionError("sequential composition mismatch: " + f.shape_string() + " then " + g.shape_string());
  }
  ClassicalMap<S> out(f.in_dim(), g.out_dim());
  for (std::size_t k = 0; k < f.out_dim(); ++k) {
    for (std::size_t c = 0; c < f.in_dim(); ++c) {
      const S& fk = f.at(k, c);
      if (ScalarTraits<S>::is_zero(fk, 0.0)) continue;
      for (std::size_t r = 0; r < g.out_dim(); ++r) {
        const S& gk = g.at(r, k);
        if (ScalarTraits<S>::is_zero(gk, 0.0)) continue;
        out.at(r, c) += gk * fk;
      }
    }
  }
  return out;
}

/// Kronecker product, left factor outer.
template <class S>
ClassicalMap<S> compose_par(const ClassicalMap<S>& f, const ClassicalMap<S>& g) {
  ClassicalMap<S> out(f.in_dim() * g.in_dim(), f.out_dim() * g.out_dim());
  for (std::size_t fr = 0; fr < f.out_dim(); ++fr) {
    for (std::size_t fc = 0; fc < f.in_dim(); ++fc) {
      const S& a = f.at(fr, fc);
      if (ScalarTraits<S>::is_zero(a, 0.0)) continue;
      for (std::size_t gr = 0; gr < g.out_dim(); ++gr) {
        for (std::size_t gc = 0; gc < g.in_dim(); ++gc) {
          const S& b = g.at(gr, gc);
          if (ScalarTraits<S>::is_zero(b, 0.0)) continue;
          out.at(fr * g.out_dim() + gr, fc * g.in_dim() + gc) = a * b;
        }
      }
    }
  }
  return out;
}

/// `perm[i]` is the (1-based) image of label i + 1. Column i carries a one
/// in row perm[i] - 1.
template <class S>
ClassicalMap<S> permutation_map(std::span<const std::uint32_t> perm) {
  const std::size_t n = perm.size();
  if (n == 0) throw Error("empty permutation");
  std::vector<bool> seen(n, false);
  for (auto p : perm) {
    if (p < 1 || p > n || seen[p - 1]) throw Error("permutation is not a bijection on [1..n]");
    seen[p - 1] = true;
  }
  ClassicalMap<S> m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(perm[i] - 1, i) = S(1);
  return m;
}

template <class S>
ClassicalMap<S> permutation_map(const std::vector<std::uint32_t>& perm) {
  return permutation_map<S>(std::span<const std::uint32_t>(perm));
}

/// Permutation of tensor wires: input wires with sizes `dims` are sent to
/// output position order[k] = index of the input wire that ends up at
/// output position k.
template <class S>
ClassicalMap<S> wire_permutation(const std::vector<std::size_t>& dims, const std::vector<std::size_t>& order) {
  const std::size_t w = dims.size();
  if (order.size() != w) throw DimensionError("wire order has wrong length");
  std::vector<std::size_t> out_dims(w);
  for (std::size_t k = 0; k < w; ++k) out_dims[k] = dims.at(order[k]);
  const std::size_t total = std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
  ClassicalMap<S> m(total, total);
  std::vector<std::size_t> digits(w);
  for (std::size_t x = 0; x < total; ++x) {
    std::size_t rest = x;
    for (std::size_t k = w; k-- > 0;) {
      digits[k] = rest % dims[k];
      rest /= dims[k];
    }
    std::size_t y = 0;
    for (std::size_t k = 0; k < w; ++k) y = y * out_dims[k] + digits[order[k]];
    m.at(y, x) = S(1);
  }
  return m;
}

/// Generalised Choi vector Σ_i |ii⟩ (a state on dim²).
template <class S>
ClassicalMap<S> choi_vector(std::size_t dim) {
  ClassicalMap<S> v(1, dim * dim);
  for (std::size_t i = 0; i < dim; ++i) v.at(i * dim + i, 0) = S(1);
  return v;
}

/// Generalised Choi covector Σ_j ⟨jj| (an effect on dim²).
template <class S>
ClassicalMap<S> choi_covector(std::size_t dim) {
  ClassicalMap<S> g(dim * dim, 1);
  for (std::size_t j = 0; j < dim; ++j) g.at(0, j * dim + j) = S(1);
  return g;
}

/// Closes both wires of a square map with the Choi pair; equals the trace.
template <class S>
S choi_close(const ClassicalMap<S>& m) {
  if (m.in_dim() != m.out_dim()) throw DimensionError("choi closure needs a square map, got " + m.shape_string());
  S total(0);
  for (std::size_t w = 0; w < m.in_dim(); ++w) total += m.at(w, w);
  return total;
}

/// Evaluates (id ⊗ g)(γ ⊗ id) exactly and compares with id.
template <class S>
bool snake_check(std::size_t dim) {
  if (dim == 0) throw DimensionError("snake check needs dim >= 1");
  auto id = ClassicalMap<S>::identity(dim);
  auto bent = compose_seq(compose_par(choi_vector<S>(dim), id), compose_par(id, choi_covector<S>(dim)));
  return bent == id;
}

template <class S>
double max_abs_dev(const ClassicalMap<S>& a, const ClassicalMap<S>& b) {
  a.require_same_shape(b);
  double dev = 0.0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) {
    S d = ea[k] - eb[k];
    dev = std::max(dev, std::fabs(ScalarTraits<S>::to_double(d)));
  }
  return dev;
}

template <class S>
bool approx_equal(const ClassicalMap<S>& a, const ClassicalMap<S>& b, double tol) {
  if (a.in_dim() != b.in_dim() || a.out_dim() != b.out_dim()) return false;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) {
    if (!ScalarTraits<S>::equal(ea[k], eb[k], tol)) return false;
  }
  return true;
}

/// Rank of a list of equal-length rows by Gaussian elimination. Exact for
/// rationals; pivots below `tol` count as zero for floats.
template <class S>
std::size_t rank(std::vector<std::vector<S>> rows, double tol = kDefaultTolerance) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t pivot = r;
    double best = 0.0;
    for (std::size_t k = r; k < rows.size(); ++k) {
      const double mag = std::fabs(ScalarTraits<S>::to_double(rows[k][c]));
      if (!ScalarTraits<S>::is_zero(rows[k][c], tol) && mag > best) {
        best = mag;
        pivot = k;
      }
    }
    if (ScalarTraits<S>::is_zero(rows[pivot][c], tol)) continue;
    std::swap(rows[r], rows[pivot]);
    for (std::size_t k = r + 1; k < rows.size(); ++k) {
      if (ScalarTraits<S>::is_zero(rows[k][c], 0.0)) continue;
      const S factor = rows[k][c] / rows[r][c];
      for (std::size_t j = c; j < cols; ++j) rows[k][j] -= factor * rows[r][j];
    }
    ++r;
  }
  return r;
}

/// {"in":n,"out":m,"entries":[[num,den],...]} with entries row-major.
template <class S>
nlohmann::json to_json(const ClassicalMap<S>& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& x : m.entries()) entries.push_back(ScalarTraits<S>::to_json(x));
  return {{"in", m.in_dim()}, {"out", m.out_dim()}, {"entries", std::move(entries)}};
}

template <class S>
ClassicalMap<S> from_json(const nlohmann::json& j) {
  std::vector<S> entries;
  for (const auto& e : j.at("entries")) entries.push_back(ScalarTraits<S>::from_json(e));
  return ClassicalMap<S>(j.at("in").get<std::size_t>(), j.at("out").get<std::size_t>(), std::move(entries));
}

}  // namespace bctk::classical
