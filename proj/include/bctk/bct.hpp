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

// Bilocal classical theory.
//
// Every transformation between non-trivial systems is stored as its unique
// conical combination of normalised atomic transformations A_{i0}^{l,τ}:
// a sparse map (i0, l, τ) -> C ≥ 0 over global labels. An atomic term acts on
// a pure bipartite state with an ancilla as
//
//     A_{i0}^{l,τ} ⊠ id : |(i, j)_s)  ->  δ_{i,i0} |(l, j)_{s⊕τ}).
//
// A tensor is a valid transformation iff every row sum Σ_{l,τ} C(i0,l,τ) is
// at most 1, and a channel iff every row sum equals 1.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bctk/scalar.hpp"
#include "bctk/systems.hpp"

namespace bctk::bct {

template <class S>
struct BctState {
  SystemShape shape;
  std::vector<S> weights;  // index q-1 for global label q

  BctState() : weights{S(1)} {}
  BctState(SystemShape sh, std::vector<S> w) : shape(std::move(sh)), weights(std::move(w)) {
    if (weights.size() != shape.dim()) throw DimensionError("state weight count does not match " + shape.to_string());
    for (const auto& x : weights) {
      if (ScalarTraits<S>::is_negative(x, 0.0)) throw Error("state weights must be nonnegative");
    }
  }

  S total() const {
    S t(0);
    for (const auto& x : weights) t += x;
    return t;
  }
  bool is_valid(double tol = kDefaultTolerance) const { return !ScalarTraits<S>::is_negative(S(1) - total(), tol); }
  bool is_deterministic(double tol = kDefaultTolerance) const { return ScalarTraits<S>::equal(total(), S(1), tol); }

  friend bool operator==(const BctState&, const BctState&) = default;
};

template <class S>
struct BctEffect {
  SystemShape shape;
  std::vector<S> weights;

  BctEffect() : weights{S(1)} {}
  BctEffect(SystemShape sh, std::vector<S> w) : shape(std::move(sh)), weights(std::move(w)) {
    if (weights.size() != shape.dim()) throw DimensionError("effect weight count does not match " + shape.to_string());
    for (const auto& x : weights) {
      if (ScalarTraits<S>::is_negative(x, 0.0)) throw Error("effect weights must be nonnegative");
    }
  }

  bool is_valid(double tol = kDefaultTolerance) const {
    return std::none_of(weights.begin(), weights.end(),
                        [&](const S& x) { return ScalarTraits<S>::is_negative(S(1) - x, tol); });
  }

  friend bool operator==(const BctEffect&, const BctEffect&) = default;
};

struct TermKey {
  Label in;
  Label out;
  Bit tau;
  friend auto operator<=>(const TermKey&, const TermKey&) = default;
};

template <class S>
struct AtomicTerm {
  Label i0;
  Label l;
  Bit tau;
  S weight;
  friend bool operator==(const AtomicTerm&, const AtomicTerm&) = default;
};

template <class S>
class TransformationTensor {
 public:
  using Coefficients = std::map<TermKey, S>;

  TransformationTensor() = default;
  TransformationTensor(SystemShape in, SystemShape out) : in_(std::move(in)), out_(std::move(out)) {
    if (in_.is_trivial() || out_.is_trivial()) {
      throw DimensionError("transformation tensors need non-trivial input and output systems");
    }
  }

  const SystemShape& in_shape() const { return in_; }
  const SystemShape& out_shape() const { return out_; }
  const Coefficients& coeffs() const { return coeffs_; }
  bool empty() const { return coeffs_.empty(); }

  /// Accumulates weight w on A_{i0}^{l,τ}. Negative weights are rejected.
  void add(Label i0, Label l, Bit tau, const S& w) {
    if (i0 < 1 || i0 > in_.dim() || l < 1 || l > out_.dim() || tau > 1) {
      throw Error("atomic term (" + std::to_string(i0) + "->" + std::to_string(l) + ",tau=" + std::to_string(tau) +
                  ") out of range for " + in_.to_string() + "->" + out_.to_string());
    }
    if (ScalarTraits<S>::is_negative(w, 0.0)) throw Error("conical coefficients must be nonnegative");
    if (ScalarTraits<S>::is_zero(w, 0.0)) return;
    auto [it, inserted] = coeffs_.try_emplace(TermKey{i0, l, tau}, w);
    if (!inserted) it->second += w;
  }

  S coefficient(Label i0, Label l, Bit tau) const {
    auto it = coeffs_.find(TermKey{i0, l, tau});
    return it == coeffs_.end() ? S(0) : it->second;
  }

  /// Σ_{l,τ} C(i0, l, τ).
  S row_sum(Label i0) const {
    S total(0);
    for (auto it = coeffs_.lower_bound(TermKey{i0, 0, 0}); it != coeffs_.end() && it->first.in == i0; ++it) {
      total += it->second;
    }
    return total;
  }

  /// Terms whose input label is i0, as an iterator range.
  auto row(Label i0) const {
    return std::make_pair(coeffs_.lower_bound(TermKey{i0, 0, 0}), coeffs_.lower_bound(TermKey{i0 + 1, 0, 0}));
  }

  bool is_valid(double tol = kDefaultTolerance) const {
    for (Label i0 = 1; i0 <= in_.dim(); ++i0) {
      if (ScalarTraits<S>::is_negative(S(1) - row_sum(i0), tol)) return false;
    }
    return true;
  }

  bool is_channel(double tol = kDefaultTolerance) const {
    for (Label i0 = 1; i0 <= in_.dim(); ++i0) {
      if (!ScalarTraits<S>::equal(row_sum(i0), S(1), tol)) return false;
    }
    return true;
  }

  TransformationTensor& operator+=(const TransformationTensor& other) {
    require_same_type(other);
    for (const auto& [k, w] : other.coeffs_) add(k.in, k.out, k.tau, w);
    return *this;
  }

  TransformationTensor scaled(const S& factor) const {
    TransformationTensor out(in_, out_);
    for (const auto& [k, w] : coeffs_) out.add(k.in, k.out, k.tau, w * factor);
    return out;
  }

  void require_same_type(const TransformationTensor& other) const {
    if (!(in_ == other.in_) || !(out_ == other.out_)) {
      throw DimensionError("tensor type mismatch: " + type_string() + " vs " + other.type_string());
    }
  }
  std::string type_string() const { return in_.to_string() + "->" + out_.to_string(); }

  friend bool operator==(const TransformationTensor&, const TransformationTensor&) = default;

 private:
  SystemShape in_{2};
  SystemShape out_{2};
  Coefficients coeffs_;
};

template <class S>
bool approx_equal(const TransformationTensor<S>& a, const TransformationTensor<S>& b, double tol) {
  if (!(a.in_shape() == b.in_shape()) || !(a.out_shape() == b.out_shape())) return false;
  std::set<TermKey> keys;
  for (const auto& [k, w] : a.coeffs()) keys.insert(k);
  for (const auto& [k, w] : b.coeffs()) keys.insert(k);
  return std::all_of(keys.begin(), keys.end(), [&](const TermKey& k) {
    return ScalarTraits<S>::equal(a.coefficient(k.in, k.out, k.tau), b.coefficient(k.in, k.out, k.tau), tol);
  });
}

// ---------------------------------------------------------------------------
// States and effects

template <class S>
BctState<S> pure_state(const SystemShape& shape, Label q) {
  if (q < 1 || q > shape.dim()) throw Error("pure state label out of range for " + shape.to_string());
  std::vector<S> w(shape.dim(), S(0));
  w[q - 1] = S(1);
  return BctState<S>(shape, std::move(w));
}

template <class S>
BctState<S> pure_state(const SystemShape& shape, const PureLabel& label) {
  return pure_state<S>(shape, flatten_label(shape, label));
}

template <class S>
BctEffect<S> pure_effect(const SystemShape& shape, Label q) {
  if (q < 1 || q > shape.dim()) throw Error("pure effect label out of range for " + shape.to_string());
  std::vector<S> w(shape.dim(), S(0));
  w[q - 1] = S(1);
  return BctEffect<S>(shape, std::move(w));
}

template <class S>
BctEffect<S> pure_effect(const SystemShape& shape, const PureLabel& label) {
  return pure_effect<S>(shape, flatten_label(shape, label));
}

/// The unique deterministic effect: the all-ones covector.
template <class S>
BctEffect<S> deterministic_effect(const SystemShape& shape) {
  return BctEffect<S>(shape, std::vector<S>(shape.dim(), S(1)));
}

/// Uniform mixture of all pure states.
template <class S>
BctState<S> maximally_mixed(const SystemShape& shape) {
  const auto n = static_cast<std::int64_t>(shape.dim());
  return BctState<S>(shape, std::vector<S>(shape.dim(), scalar<S>(1, n)));
}

template <class S>
S pair(const BctEffect<S>& e, const BctState<S>& rho) {
  if (!(e.shape == rho.shape)) {
    throw DimensionError("pairing shape mismatch: " + e.shape.to_string() + " vs " + rho.shape.to_string());
  }
  S total(0);
  for (std::size_t k = 0; k < rho.weights.size(); ++k) total += e.weights[k] * rho.weights[k];
  return total;
}

/// Bilinear extension of |a) ⊠ |b) = ½ Σ_s |(a, b)_s).
template <class S>
BctState<S> par_states(const BctState<S>& rho, const BctState<S>& sigma) {
  const auto& a = rho.shape;
  const auto& b = sigma.shape;
  if (a.is_trivial() || b.is_trivial()) {
    const auto& scalar_side = a.is_trivial() ? rho : sigma;
    const auto& other = a.is_trivial() ? sigma : rho;
    BctState<S> out = other;
    for (auto& x : out.weights) x *= scalar_side.weights[0];
    return out;
  }
  const S half = scalar<S>(1, 2);
  auto joint = concat(a, b);
  std::vector<S> w(joint.dim(), S(0));
  for (Label x = 1; x <= a.dim(); ++x) {
    if (ScalarTraits<S>::is_zero(rho.weights[x - 1], 0.0)) continue;
    for (Label y = 1; y <= b.dim(); ++y) {
      S v = half * rho.weights[x - 1] * sigma.weights[y - 1];
      for (Bit s = 0; s <= 1; ++s) w[join_label(a, b, x, y, s) - 1] += v;
    }
  }
  return BctState<S>(joint, std::move(w));
}

/// Bilinear extension of (a| ⊠ (b| = Σ_s ((a, b)_s|. No ½: pairing with
/// |a) ⊠ |b) must give 1.
template <class S>
BctEffect<S> par_effects(const BctEffect<S>& e, const BctEffect<S>& f) {
  const auto& a = e.shape;
  const auto& b = f.shape;
  if (a.is_trivial() || b.is_trivial()) {
    const auto& scalar_side = a.is_trivial() ? e : f;
    const auto& other = a.is_trivial() ? f : e;
    BctEffect<S> out = other;
    for (auto& x : out.weights) x *= scalar_side.weights[0];
    return out;
  }
  auto joint = concat(a, b);
  std::vector<S> w(joint.dim(), S(0));
  for (Label x = 1; x <= a.dim(); ++x) {
    if (ScalarTraits<S>::is_zero(e.weights[x - 1], 0.0)) continue;
    for (Label y = 1; y <= b.dim(); ++y) {
      S v = e.weights[x - 1] * f.weights[y - 1];
      for (Bit s = 0; s <= 1; ++s) w[join_label(a, b, x, y, s) - 1] += v;
    }
  }
  return BctEffect<S>(joint, std::move(w));
}

// ---------------------------------------------------------------------------
// Transformations

/// t1 first, then t2: C''(i0,l'',τ'') = Σ_l Σ_{τ⊕τ'=τ''} C1(i0,l,τ)·C2(l,l'',τ').
template <class S>
TransformationTensor<S> compose_seq(const TransformationTensor<S>& t1, const TransformationTensor<S>& t2) {
  if (!(t1.out_shape() == t2.in_shape())) {
    throw DimensionError("sequential composition mismatch: " + t1.type_string() + " then " + t2.type_string());
  }
  TransformationTensor<S> out(t1.in_shape(), t2.out_shape());
  for (const auto& [k1, w1] : t1.coeffs()) {
    auto [first, last] = t2.row(k1.out);
    for (auto it = first; it != last; ++it) {
      out.add(k1.in, it->first.out, static_cast<Bit>(k1.tau ^ it->first.tau), w1 * it->second);
    }
  }
  return out;
}

/// Σ_i A_i^{i,0}.
template <class S>
TransformationTensor<S> identity(const SystemShape& shape) {
  TransformationTensor<S> out(shape, shape);
  for (Label i = 1; i <= shape.dim(); ++i) out.add(i, i, 0, S(1));
  return out;
}

/// t ⊠ id_right: every term (i0 -> l, σ) becomes, for every l2 and s1,
/// ((i0, l2)_{s1} -> (l, l2)_{s1⊕σ}, τ = σ).
template <class S>
TransformationTensor<S> par_with_identity(const TransformationTensor<S>& t, const SystemShape& right) {
  if (right.is_trivial()) return t;
  const auto& a = t.in_shape();
  const auto& b = t.out_shape();
  TransformationTensor<S> out(concat(a, right), concat(b, right));
  for (const auto& [k, w] : t.coeffs()) {
    for (Label l2 = 1; l2 <= right.dim(); ++l2) {
      for (Bit s1 = 0; s1 <= 1; ++s1) {
        out.add(join_label(a, right, k.in, l2, s1), join_label(b, right, k.out, l2, static_cast<Bit>(s1 ^ k.tau)),
                k.tau, w);
      }
    }
  }
  return out;
}

/// σ_{A,B}: (i, j)_s -> (j, i)_s with τ = s.
template <class S>
TransformationTensor<S> swap(const SystemShape& a, const SystemShape& b) {
  if (a.is_trivial() || b.is_trivial()) throw DimensionError("swap needs non-trivial systems");
  TransformationTensor<S> out(concat(a, b), concat(b, a));
  for (Label i = 1; i <= a.dim(); ++i) {
    for (Label j = 1; j <= b.dim(); ++j) {
      for (Bit s = 0; s <= 1; ++s) out.add(join_label(a, b, i, j, s), join_label(b, a, j, i, s), s, S(1));
    }
  }
  return out;
}

/// id_left ⊠ t, as swap ∘ (t ⊠ id_left) ∘ swap.
template <class S>
TransformationTensor<S> identity_par(const SystemShape& left, const TransformationTensor<S>& t) {
  if (left.is_trivial()) return t;
  auto lifted = par_with_identity(t, left);
  return compose_seq(compose_seq(swap<S>(left, t.in_shape()), lifted), swap<S>(t.out_shape(), left));
}

/// t1 ⊠ t2 := (t1 ⊠ id) ∘ (id ⊠ t2).
template <class S>
TransformationTensor<S> compose_par(const TransformationTensor<S>& t1, const TransformationTensor<S>& t2) {
  return compose_seq(identity_par(t1.in_shape(), t2), par_with_identity(t1, t2.out_shape()));
}

/// out[l] = Σ_{i0,τ} C(i0,l,τ)·ρ[i0].
template <class S>
BctState<S> apply(const TransformationTensor<S>& t, const BctState<S>& rho) {
  if (!(t.in_shape() == rho.shape)) {
    throw DimensionError("apply: tensor input " + t.in_shape().to_string() + " vs state " + rho.shape.to_string());
  }
  std::vector<S> w(t.out_shape().dim(), S(0));
  for (const auto& [k, c] : t.coeffs()) w[k.out - 1] += c * rho.weights[k.in - 1];
  return BctState<S>(t.out_shape(), std::move(w));
}

/// out[i0] = Σ_{l,τ} C(i0,l,τ)·e[l].
template <class S>
BctEffect<S> pull(const BctEffect<S>& e, const TransformationTensor<S>& t) {
  if (!(t.out_shape() == e.shape)) {
    throw DimensionError("pull: tensor output " + t.out_shape().to_string() + " vs effect " + e.shape.to_string());
  }
  std::vector<S> w(t.in_shape().dim(), S(0));
  for (const auto& [k, c] : t.coeffs()) w[k.in - 1] += c * e.weights[k.out - 1];
  return BctEffect<S>(t.in_shape(), std::move(w));
}

/// Elementary system obtained by fusing a ⊠ b.
inline SystemShape fused_shape(const SystemShape& a, const SystemShape& b) {
  return SystemShape::elementary(static_cast<std::uint32_t>(composite_dim(a.dim(), b.dim())));
}

/// Merging map ν: |(i, j)_s) -> |Q(i, j, s)), coefficients δ_{l,Q(i,j,s)}δ_{τ,0}.
template <class S>
TransformationTensor<S> nu(const SystemShape& a, const SystemShape& b) {
  if (a.is_trivial() || b.is_trivial()) throw DimensionError("nu needs non-trivial systems");
  TransformationTensor<S> out(concat(a, b), fused_shape(a, b));
  for (Label i = 1; i <= a.dim(); ++i) {
    for (Label j = 1; j <= b.dim(); ++j) {
      for (Bit s = 0; s <= 1; ++s) out.add(join_label(a, b, i, j, s), q_encode(a.dim(), b.dim(), i, j, s), 0, S(1));
    }
  }
  return out;
}

template <class S>
TransformationTensor<S> nu_inv(const SystemShape& a, const SystemShape& b) {
  if (a.is_trivial() || b.is_trivial()) throw DimensionError("nu_inv needs non-trivial systems");
  TransformationTensor<S> out(fused_shape(a, b), concat(a, b));
  for (Label i = 1; i <= a.dim(); ++i) {
    for (Label j = 1; j <= b.dim(); ++j) {
      for (Bit s = 0; s <= 1; ++s) out.add(q_encode(a.dim(), b.dim(), i, j, s), join_label(a, b, i, j, s), 0, S(1));
    }
  }
  return out;
}

/// ν applied left to right until one elementary system remains:
/// shape -> elementary(N). Carries the left-nested label q to q itself.
template <class S>
TransformationTensor<S> fuse_chain(const SystemShape& shape) {
  if (shape.is_trivial()) throw DimensionError("cannot fuse the trivial system");
  const auto first = SystemShape::elementary(shape.elems()[0]);
  auto chain = identity<S>(first);
  for (std::size_t k = 1; k < shape.parts(); ++k) {
    const auto next = SystemShape::elementary(shape.elems()[k]);
    const auto fused = chain.out_shape();
    chain = compose_seq(par_with_identity(chain, next), nu<S>(fused, next));
  }
  return chain;
}

// ---------------------------------------------------------------------------
// Reversible transformations

/// A permutation π of the global labels and one section-bit flip per label.
struct ReversibleSpec {
  std::vector<std::uint32_t> perm;  // perm[i-1] = π(i), 1-based
  std::vector<Bit> sigma;           // sigma[i-1] = σ_i

  void validate() const {
    const auto n = perm.size();
    if (n == 0 || sigma.size() != n) throw Error("reversible spec needs matching non-empty π and σ");
    std::vector<bool> seen(n, false);
    for (auto p : perm) {
      if (p < 1 || p > n || seen[p - 1]) throw Error("reversible spec: π is not a bijection");
      seen[p - 1] = true;
    }
    for (auto b : sigma) {
      if (b > 1) throw Error("reversible spec: σ entries must be bits");
    }
  }

  /// π⁻¹ with σ'_{π(i)} = σ_i.
  ReversibleSpec inverse() const {
    validate();
    ReversibleSpec inv;
    inv.perm.resize(perm.size());
    inv.sigma.resize(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
      inv.perm[perm[i] - 1] = static_cast<std::uint32_t>(i + 1);
      inv.sigma[perm[i] - 1] = sigma[i];
    }
    return inv;
  }
};

/// C(i, l, τ) = δ_{π(i),l}·δ_{σ_i,τ} on a system of global dimension |π|.
template <class S>
TransformationTensor<S> reversible(const SystemShape& shape, const ReversibleSpec& spec) {
  spec.validate();
  if (spec.perm.size() != shape.dim()) throw DimensionError("reversible spec size does not match " + shape.to_string());
  TransformationTensor<S> out(shape, shape);
  for (std::size_t i = 0; i < spec.perm.size(); ++i) out.add(i + 1, spec.perm[i], spec.sigma[i], S(1));
  return out;
}

template <class S>
TransformationTensor<S> reversible(const ReversibleSpec& spec) {
  return reversible<S>(SystemShape::elementary(static_cast<std::uint32_t>(spec.perm.size())), spec);
}

/// The global permutation decoded through the bipartite codec:
/// (i, j, s) -> (π_n, π_m, π_B) and σ_{i,j,s}.
struct BipartiteReversibleView {
  struct Entry {
    Label i, j;
    Bit s;
    Label i_out, j_out;
    Bit s_out;
    Bit sigma;
  };
  std::vector<Entry> entries;
};

inline BipartiteReversibleView reversible_bipartite_view(const SystemShape& a, const SystemShape& b,
                                                         const ReversibleSpec& spec) {
  spec.validate();
  const auto joint = concat(a, b);
  if (spec.perm.size() != joint.dim()) throw DimensionError("reversible spec size does not match " + joint.to_string());
  BipartiteReversibleView view;
  for (Label i = 1; i <= a.dim(); ++i) {
    for (Label j = 1; j <= b.dim(); ++j) {
      for (Bit s = 0; s <= 1; ++s) {
        const Label q = join_label(a, b, i, j, s);
        auto image = split_label(a, b, spec.perm[q - 1]);
        view.entries.push_back({i, j, s, image.i, image.j, image.s, spec.sigma[q - 1]});
      }
    }
  }
  return view;
}

// ---------------------------------------------------------------------------
// Conical decomposition

template <class S>
std::vector<AtomicTerm<S>> decompose(const TransformationTensor<S>& t) {
  std::vector<AtomicTerm<S>> out;
  out.reserve(t.coeffs().size());
  for (const auto& [k, w] : t.coeffs()) out.push_back({k.in, k.out, k.tau, w});
  return out;
}

template <class S>
TransformationTensor<S> recompose(const SystemShape& in, const SystemShape& out,
                                  const std::vector<AtomicTerm<S>>& terms) {
  TransformationTensor<S> t(in, out);
  for (const auto& term : terms) t.add(term.i0, term.l, term.tau, term.weight);
  return t;
}

// ---------------------------------------------------------------------------
// Instruments

template <class S>
struct Instrument {
  std::vector<TransformationTensor<S>> members;
  std::vector<std::string> outcomes;

  void validate_types() const {
    if (members.empty()) throw Error("instrument has no outcomes");
    for (const auto& m : members) members.front().require_same_type(m);
  }
};

/// t_Y := Σ_{y∈Y} t_y.
template <class S>
TransformationTensor<S> coarse_grain(const Instrument<S>& instr, const std::vector<std::size_t>& subset) {
  instr.validate_types();
  TransformationTensor<S> out(instr.members.front().in_shape(), instr.members.front().out_shape());
  for (auto y : subset) out += instr.members.at(y);
  return out;
}

template <class S>
TransformationTensor<S> coarse_grain(const Instrument<S>& instr) {
  std::vector<std::size_t> all(instr.members.size());
  for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
  return coarse_grain(instr, all);
}

template <class S>
bool is_channel(const TransformationTensor<S>& t, double tol = kDefaultTolerance) {
  return t.is_channel(tol);
}

template <class S>
bool is_valid_instrument(const Instrument<S>& instr, double tol = kDefaultTolerance) {
  return std::all_of(instr.members.begin(), instr.members.end(), [&](const auto& m) { return m.is_valid(tol); }) &&
         coarse_grain(instr).is_channel(tol);
}

// ---------------------------------------------------------------------------
// Processes with one trivial side, lifted to tensors

/// ρ ⊠ id_B as a tensor B -> A⊠B: C(j, (a, j)_τ, τ) = ½ρ[a].
template <class S>
TransformationTensor<S> prepare_left(const BctState<S>& rho, const SystemShape& b) {
  const auto& a = rho.shape;
  TransformationTensor<S> out(b, concat(a, b));
  const S half = scalar<S>(1, 2);
  for (Label x = 1; x <= a.dim(); ++x) {
    if (ScalarTraits<S>::is_zero(rho.weights[x - 1], 0.0)) continue;
    for (Label j = 1; j <= b.dim(); ++j) {
      for (Bit tau = 0; tau <= 1; ++tau) out.add(j, join_label(a, b, x, j, tau), tau, half * rho.weights[x - 1]);
    }
  }
  return out;
}

/// e ⊠ id_B as a tensor A⊠B -> B: C((a, j)_s, j, s) = e[a].
template <class S>
TransformationTensor<S> measure_left(const BctEffect<S>& e, const SystemShape& b) {
  const auto& a = e.shape;
  TransformationTensor<S> out(concat(a, b), b);
  for (Label x = 1; x <= a.dim(); ++x) {
    if (ScalarTraits<S>::is_zero(e.weights[x - 1], 0.0)) continue;
    for (Label j = 1; j <= b.dim(); ++j) {
      for (Bit s = 0; s <= 1; ++s) out.add(join_label(a, b, x, j, s), j, s, e.weights[x - 1]);
    }
  }
  return out;
}

/// |ρ)(e| through the trivial system: C(i, l, τ) = ½ e[i] ρ[l] for both τ.
template <class S>
TransformationTensor<S> measure_prepare(const BctEffect<S>& e, const BctState<S>& rho) {
  TransformationTensor<S> out(e.shape, rho.shape);
  const S half = scalar<S>(1, 2);
  for (Label i = 1; i <= e.shape.dim(); ++i) {
    if (ScalarTraits<S>::is_zero(e.weights[i - 1], 0.0)) continue;
    for (Label l = 1; l <= rho.shape.dim(); ++l) {
      for (Bit tau = 0; tau <= 1; ++tau) out.add(i, l, tau, half * e.weights[i - 1] * rho.weights[l - 1]);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON

inline SystemShape shape_from_json(const nlohmann::json& j) {
  return SystemShape(j.get<std::vector<std::uint32_t>>());
}

/// {"in":shape,"out":shape,"terms":[{"i0":int,"l":int,"tau":0|1,"w":[num,den]},...]}
template <class S>
nlohmann::json to_json(const TransformationTensor<S>& t) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [k, w] : t.coeffs()) {
    terms.push_back({{"i0", k.in}, {"l", k.out}, {"tau", k.tau}, {"w", ScalarTraits<S>::to_json(w)}});
  }
  return {{"in", t.in_shape().elems()}, {"out", t.out_shape().elems()}, {"terms", std::move(terms)}};
}

template <class S>
TransformationTensor<S> tensor_from_json(const nlohmann::json& j) {
  TransformationTensor<S> t(shape_from_json(j.at("in")), shape_from_json(j.at("out")));
  for (const auto& term : j.at("terms")) {
    t.add(term.at("i0").get<Label>(), term.at("l").get<Label>(), term.at("tau").get<Bit>(),
          ScalarTraits<S>::from_json(term.at("w")));
  }
  return t;
}

template <class S>
nlohmann::json to_json(const BctState<S>& rho) {
  nlohmann::json w = nlohmann::json::array();
  for (const auto& x : rho.weights) w.push_back(ScalarTraits<S>::to_json(x));
  return {{"kind", "state"}, {"shape", rho.shape.elems()}, {"weights", std::move(w)}};
}

template <class S>
nlohmann::json to_json(const BctEffect<S>& e) {
  nlohmann::json w = nlohmann::json::array();
  for (const auto& x : e.weights) w.push_back(ScalarTraits<S>::to_json(x));
  return {{"kind", "effect"}, {"shape", e.shape.elems()}, {"weights", std::move(w)}};
}

}  // namespace bctk::bct
