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

// The ontological model ξ of bilocal classical theory.
//
// An elementary system n is sent to the classical system 2n = n ⊗ B with a
// binary register B. A composite n₁⊠…⊠n_p is sent to the tensor product of
// its elementary ontic spaces, wire order (n₁, B₁, n₂, B₂, …).
//
//   states   |i)  ↦ |i⟩ ⊗ ½(|0⟩ + |1⟩)
//   effects  (i|  ↦ ⟨i| ⊗ (⟨0| + ⟨1|)
//   atomics  A_{i0}^{l,τ} : (i, b) ↦ δ_{i,i0} (l, b ⊕ τ)
//
// Composite labels carry their section bits as parities against the first
// ontic bit: the pure label (i₁..i_p; s₁..s_{p−1}) has bits
// b₁ = c, b_{k+1} = c ⊕ s_k, uniformly mixed over c.
//
// Composite transformations are imaged on fused wires: the merging gate
// μ : (x, b₁, y, b₂) ↦ (Q(x, y, b₁⊕b₂), b₁) is applied left to right until a
// single (label, bit) pair remains, the atomic rule acts there, and the output
// is split back with μ⁻¹.

#pragma once

#include <cstddef>
#include <vector>

#include "bctk/bct.hpp"
#include "bctk/classical.hpp"
#include "bctk/systems.hpp"

namespace bctk::ontic {

using classical::ClassicalMap;

struct OnticSpace {
  SystemShape shape;
  std::size_t dim = 1;
  std::vector<std::size_t> wires;  // n₁, 2, n₂, 2, ...
};

inline OnticSpace xi_system(const SystemShape& shape) {
  OnticSpace space{shape, 1, {}};
  for (auto n : shape.elems()) {
    space.wires.push_back(n);
    space.wires.push_back(2);
    space.dim *= 2 * static_cast<std::size_t>(n);
  }
  return space;
}

/// Ontic index of one elementary block (i, b), 1-based i.
inline std::size_t block_index(std::uint32_t i, Bit b) { return (static_cast<std::size_t>(i) - 1) * 2 + b; }

/// Index into the fused space 2N for (label, bit).
inline std::size_t fused_index(Label x, Bit c) { return (static_cast<std::size_t>(x) - 1) * 2 + c; }

/// Applies μ repeatedly to an ontic index of `shape`, returning the fused
/// (global label, bit) pair.
inline std::pair<Label, Bit> fuse(const SystemShape& shape, std::size_t ontic) {
  const auto& e = shape.elems();
  const std::size_t p = e.size();
  std::vector<std::uint32_t> idx(p);
  std::vector<Bit> bit(p);
  for (std::size_t k = p; k-- > 0;) {
    const std::size_t block = ontic % (2 * e[k]);
    ontic /= 2 * e[k];
    idx[k] = static_cast<std::uint32_t>(block / 2 + 1);
    bit[k] = static_cast<Bit>(block % 2);
  }
  Label x = idx[0];
  Label x_dim = e[0];
  Bit c = bit[0];
  for (std::size_t k = 1; k < p; ++k) {
    x = q_encode(x_dim, e[k], x, idx[k], static_cast<Bit>(c ^ bit[k]));
    x_dim = 2 * x_dim * e[k];
  }
  return {x, c};
}

/// Table fused-index -> ontic index (the inverse of `fuse`).
inline std::vector<std::size_t> unfuse_table(const SystemShape& shape) {
  const auto space = xi_system(shape);
  std::vector<std::size_t> table(space.dim);
  for (std::size_t o = 0; o < space.dim; ++o) {
    auto [x, c] = fuse(shape, o);
    table[fused_index(x, c)] = o;
  }
  return table;
}

/// Ontic index of the elementary blocks (i_k, b_k), left block outer.
inline std::size_t ontic_index(const SystemShape& shape, const std::vector<std::uint32_t>& idx,
                               const std::vector<Bit>& bits) {
  std::size_t o = 0;
  for (std::size_t k = 0; k < shape.parts(); ++k) o = o * (2 * shape.elems()[k]) + block_index(idx[k], bits[k]);
  return o;
}

/// Linear extension of the pure-state rule, written directly as the parity
/// closed form.
template <class S>
ClassicalMap<S> xi_state(const bct::BctState<S>& rho) {
  const auto space = xi_system(rho.shape);
  std::vector<S> out(space.dim, S(0));
  if (rho.shape.is_trivial()) return ClassicalMap<S>::state({rho.weights[0]});
  const S half = scalar<S>(1, 2);
  for (Label q = 1; q <= rho.shape.dim(); ++q) {
    const S& w = rho.weights[q - 1];
    if (ScalarTraits<S>::is_zero(w, 0.0)) continue;
    auto label = unflatten_label(rho.shape, q);
    std::vector<Bit> bits(label.idx.size());
    for (Bit c = 0; c <= 1; ++c) {
      bits[0] = c;
      for (std::size_t k = 1; k < bits.size(); ++k) bits[k] = static_cast<Bit>(c ^ label.bits[k - 1]);
      out[ontic_index(rho.shape, label.idx, bits)] += half * w;
    }
  }
  return ClassicalMap<S>::state(std::move(out));
}

/// Same bit pattern as xi_state, summed over c without the ½.
template <class S>
ClassicalMap<S> xi_effect(const bct::BctEffect<S>& e) {
  const auto space = xi_system(e.shape);
  if (e.shape.is_trivial()) return ClassicalMap<S>::effect({e.weights[0]});
  std::vector<S> out(space.dim, S(0));
  for (Label q = 1; q <= e.shape.dim(); ++q) {
    const S& w = e.weights[q - 1];
    if (ScalarTraits<S>::is_zero(w, 0.0)) continue;
    auto label = unflatten_label(e.shape, q);
    std::vector<Bit> bits(label.idx.size());
    for (Bit c = 0; c <= 1; ++c) {
      bits[0] = c;
      for (std::size_t k = 1; k < bits.size(); ++k) bits[k] = static_cast<Bit>(c ^ label.bits[k - 1]);
      out[ontic_index(e.shape, label.idx, bits)] += w;
    }
  }
  return ClassicalMap<S>::effect(std::move(out));
}

/// On fused wires M[(l, b'), (i, b)] = C(i, l, b ⊕ b'); conjugated by the
/// μ chains of the input and output shapes.
template <class S>
ClassicalMap<S> xi_transformation(const bct::TransformationTensor<S>& t) {
  const auto in_table = unfuse_table(t.in_shape());
  const auto out_table = unfuse_table(t.out_shape());
  ClassicalMap<S> m(in_table.size(), out_table.size());
  for (const auto& [k, w] : t.coeffs()) {
    for (Bit c = 0; c <= 1; ++c) {
      m.at(out_table[fused_index(k.out, static_cast<Bit>(c ^ k.tau))], in_table[fused_index(k.in, c)]) += w;
    }
  }
  return m;
}

/// Inverts xi_transformation: C(i, l, τ) = M[(l, τ), (i, 0)] on fused wires.
template <class S>
bct::TransformationTensor<S> recover_coefficients(const ClassicalMap<S>& m, const SystemShape& in,
                                                  const SystemShape& out) {
  const auto in_table = unfuse_table(in);
  const auto out_table = unfuse_table(out);
  if (m.in_dim() != in_table.size() || m.out_dim() != out_table.size()) {
    throw DimensionError("ontic image has the wrong shape for " + in.to_string() + "->" + out.to_string());
  }
  bct::TransformationTensor<S> t(in, out);
  for (Label i = 1; i <= in.dim(); ++i) {
    for (Label l = 1; l <= out.dim(); ++l) {
      for (Bit tau = 0; tau <= 1; ++tau) {
        t.add(i, l, tau, m.at(out_table[fused_index(l, tau)], in_table[fused_index(i, 0)]));
      }
    }
  }
  return t;
}

/// μ : Λ(a) ⊗ Λ(b) -> Λ(fused), (X, c₁) ⊗ (Y, c₂) ↦ (Q(X, Y, c₁⊕c₂), c₁) where
/// (X, c₁) and (Y, c₂) are the fused pairs of each side.
template <class S>
ClassicalMap<S> mu(const SystemShape& a, const SystemShape& b) {
  if (a.is_trivial() || b.is_trivial()) throw DimensionError("mu needs non-trivial systems");
  const auto la = xi_system(a).dim;
  const auto lb = xi_system(b).dim;
  ClassicalMap<S> m(la * lb, la * lb);
  for (std::size_t oa = 0; oa < la; ++oa) {
    auto [x, c1] = fuse(a, oa);
    for (std::size_t ob = 0; ob < lb; ++ob) {
      auto [y, c2] = fuse(b, ob);
      m.at(fused_index(q_encode(a.dim(), b.dim(), x, y, static_cast<Bit>(c1 ^ c2)), c1), oa * lb + ob) = S(1);
    }
  }
  return m;
}

template <class S>
ClassicalMap<S> mu_inv(const SystemShape& a, const SystemShape& b) {
  const auto forward = mu<S>(a, b);
  ClassicalMap<S> m(forward.out_dim(), forward.in_dim());
  for (std::size_t r = 0; r < forward.out_dim(); ++r) {
    for (std::size_t c = 0; c < forward.in_dim(); ++c) m.at(c, r) = forward.at(r, c);
  }
  return m;
}

/// The classical swap of the ontic spaces of a and b.
template <class S>
ClassicalMap<S> ontic_swap(const SystemShape& a, const SystemShape& b) {
  return classical::wire_permutation<S>({xi_system(a).dim, xi_system(b).dim}, {1, 0});
}

/// Closed form of ξ(R) for a reversible spec on an elementary system:
/// (i, b) ↦ (π(i), b ⊕ σ_i).
template <class S>
ClassicalMap<S> reversible_closed_form(const bct::ReversibleSpec& spec) {
  spec.validate();
  const std::size_t n = spec.perm.size();
  ClassicalMap<S> m(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (Bit b = 0; b <= 1; ++b) {
      m.at(block_index(spec.perm[i], static_cast<Bit>(b ^ spec.sigma[i])),
           block_index(static_cast<std::uint32_t>(i + 1), b)) = S(1);
    }
  }
  return m;
}

}  // namespace bctk::ontic
