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

// Seeded generators for random BCT objects.
//
// Every trial draws from its own engine, seeded by mixing (seed, stream, trial)
// through splitmix64, so trial k of a suite sees the same numbers whatever
// thread runs it and whatever else ran before.

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string_view>
#include <vector>

#include "bctk/bct.hpp"
#include "bctk/systems.hpp"

namespace bctk::rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// FNV-1a; stream names are short ASCII tags.
inline std::uint64_t stream_id(std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream, std::uint64_t trial) {
  return splitmix64(splitmix64(seed ^ stream_id(stream)) + trial);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, std::string_view stream, std::uint64_t trial) : engine_(derive_seed(seed, stream, trial)) {}

  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
  }
  Bit bit() { return static_cast<Bit>(uniform(0, 1)); }
  bool chance(int percent) { return uniform(0, 99) < percent; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    std::shuffle(v.begin(), v.end(), engine_);
  }

 private:
  std::mt19937_64 engine_;
};

/// Elementary dimension in [2, max_dim].
inline std::uint32_t random_elem(Rng& rng, std::uint32_t max_dim) {
  return static_cast<std::uint32_t>(rng.uniform(2, std::max<std::uint32_t>(2, max_dim)));
}

/// Mostly elementary shapes, sometimes a small bipartite one ((2,2) or (2,3)).
inline SystemShape random_shape(Rng& rng, std::uint32_t max_dim, int composite_percent = 20) {
  if (rng.chance(composite_percent)) {
    const std::uint32_t second = max_dim >= 3 && rng.bit() ? 3 : 2;
    return rng.bit() ? SystemShape{2, second} : SystemShape{second, 2};
  }
  return SystemShape::elementary(random_elem(rng, max_dim));
}

/// Rational in [0, 1] with a small denominator, biased towards zero so that
/// tensors stay sparse.
template <class S>
S random_weight(Rng& rng, std::int64_t den = 6) {
  if (rng.chance(40)) return S(0);
  return scalar<S>(rng.uniform(1, den), den);
}

/// Nonnegative integer weights with at least one positive entry.
inline std::vector<std::int64_t> random_counts(Rng& rng, std::size_t n, int zero_percent = 60) {
  std::vector<std::int64_t> c(n);
  for (auto& x : c) x = rng.chance(zero_percent) ? 0 : rng.uniform(1, 4);
  if (std::all_of(c.begin(), c.end(), [](auto x) { return x == 0; })) c[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 1))] = 1;
  return c;
}

/// Valid tensor. Each row is a random distribution over (l, τ) scaled by a
/// random factor in (0, 1], or exactly 1 when `channel` is set. Rows may be
/// empty unless `channel`.
template <class S>
bct::TransformationTensor<S> random_tensor(Rng& rng, const SystemShape& in, const SystemShape& out, bool channel) {
  bct::TransformationTensor<S> t(in, out);
  const std::size_t slots = 2 * out.dim();
  const int zero_percent = slots > 8 ? 85 : 50;
  for (Label i0 = 1; i0 <= in.dim(); ++i0) {
    if (!channel && rng.chance(15)) continue;
    auto counts = random_counts(rng, slots, zero_percent);
    const std::int64_t total = std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
    const std::int64_t slack = channel ? 0 : rng.uniform(0, 2);
    for (std::size_t k = 0; k < slots; ++k) {
      if (counts[k] == 0) continue;
      t.add(i0, k / 2 + 1, static_cast<Bit>(k % 2), scalar<S>(counts[k], total + slack));
    }
  }
  return t;
}

template <class S>
bct::BctState<S> random_state(Rng& rng, const SystemShape& shape, bool normalised = true) {
  auto counts = random_counts(rng, shape.dim(), shape.dim() > 8 ? 75 : 40);
  const std::int64_t total = std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
  const std::int64_t slack = normalised ? 0 : rng.uniform(0, 2);
  std::vector<S> w(counts.size());
  for (std::size_t k = 0; k < counts.size(); ++k) w[k] = scalar<S>(counts[k], total + slack);
  return bct::BctState<S>(shape, std::move(w));
}

template <class S>
bct::BctEffect<S> random_effect(Rng& rng, const SystemShape& shape) {
  std::vector<S> w(shape.dim());
  for (auto& x : w) x = random_weight<S>(rng);
  return bct::BctEffect<S>(shape, std::move(w));
}

inline bct::ReversibleSpec random_reversible_spec(Rng& rng, std::size_t n) {
  bct::ReversibleSpec spec;
  spec.perm.resize(n);
  std::iota(spec.perm.begin(), spec.perm.end(), 1U);
  rng.shuffle(spec.perm);
  spec.sigma.resize(n);
  for (auto& b : spec.sigma) b = rng.bit();
  return spec;
}

/// Random channel split term by term into `outcomes` pieces.
template <class S>
bct::Instrument<S> random_instrument(Rng& rng, const SystemShape& in, const SystemShape& out, std::size_t outcomes) {
  auto channel = random_tensor<S>(rng, in, out, true);
  bct::Instrument<S> instr;
  for (std::size_t y = 0; y < outcomes; ++y) {
    instr.members.emplace_back(in, out);
    instr.outcomes.push_back("y" + std::to_string(y));
  }
  for (const auto& [k, w] : channel.coeffs()) {
    auto parts = random_counts(rng, outcomes, 30);
    const std::int64_t total = std::accumulate(parts.begin(), parts.end(), std::int64_t{0});
    for (std::size_t y = 0; y < outcomes; ++y) {
      if (parts[y] == 0) continue;
      instr.members[y].add(k.in, k.out, k.tau, w * scalar<S>(parts[y], total));
    }
  }
  return instr;
}

}  // namespace bctk::rng
