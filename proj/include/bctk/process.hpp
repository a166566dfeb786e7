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

// A BCT process of any type: scalar, state, effect or transformation, chosen
// by which of its sides is trivial. Sequential and parallel composition are
// closed on this type.

#pragma once

#include <string>
#include <type_traits>
#include <variant>

#include "bctk/bct.hpp"
#include "bctk/classical.hpp"
#include "bctk/ontic.hpp"

namespace bctk {

template <class S>
class Process {
 public:
  using Body = std::variant<S, bct::BctState<S>, bct::BctEffect<S>, bct::TransformationTensor<S>>;

  Process() : body_(S(1)) {}
  Process(S p) : body_(std::move(p)) {}                                  // NOLINT
  Process(bct::BctState<S> rho) : body_(std::move(rho)) { normalise(); }   // NOLINT
  Process(bct::BctEffect<S> e) : body_(std::move(e)) { normalise(); }      // NOLINT
  Process(bct::TransformationTensor<S> t) : body_(std::move(t)) {}       // NOLINT

  SystemShape in_shape() const {
    if (auto* e = std::get_if<bct::BctEffect<S>>(&body_)) return e->shape;
    if (auto* t = std::get_if<bct::TransformationTensor<S>>(&body_)) return t->in_shape();
    return {};
  }
  SystemShape out_shape() const {
    if (auto* r = std::get_if<bct::BctState<S>>(&body_)) return r->shape;
    if (auto* t = std::get_if<bct::TransformationTensor<S>>(&body_)) return t->out_shape();
    return {};
  }
  std::string type_string() const { return in_shape().to_string() + "->" + out_shape().to_string(); }

  const Body& body() const { return body_; }
  bool is_scalar() const { return std::holds_alternative<S>(body_); }
  bool is_state() const { return std::holds_alternative<bct::BctState<S>>(body_); }
  bool is_effect() const { return std::holds_alternative<bct::BctEffect<S>>(body_); }
  bool is_tensor() const { return std::holds_alternative<bct::TransformationTensor<S>>(body_); }

  const S& as_scalar() const { return std::get<S>(body_); }
  const bct::BctState<S>& as_state() const { return std::get<bct::BctState<S>>(body_); }
  const bct::BctEffect<S>& as_effect() const { return std::get<bct::BctEffect<S>>(body_); }
  const bct::TransformationTensor<S>& as_tensor() const { return std::get<bct::TransformationTensor<S>>(body_); }

  Process scaled(const S& factor) const {
    return std::visit(
        [&](const auto& x) -> Process {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, S>) {
            return Process(x * factor);
          } else if constexpr (std::is_same_v<T, bct::TransformationTensor<S>>) {
            return Process(x.scaled(factor));
          } else {
            T copy = x;
            for (auto& w : copy.weights) w *= factor;
            return Process(std::move(copy));
          }
        },
        body_);
  }

 private:
  // A state or effect on the trivial system is a scalar.
  void normalise() {
    if (auto* r = std::get_if<bct::BctState<S>>(&body_); r && r->shape.is_trivial()) body_ = S(r->weights[0]);
    if (auto* e = std::get_if<bct::BctEffect<S>>(&body_); e && e->shape.is_trivial()) body_ = S(e->weights[0]);
  }

  Body body_;
};

/// p first, then q.
template <class S>
Process<S> then(const Process<S>& p, const Process<S>& q) {
  if (!(p.out_shape() == q.in_shape())) {
    throw DimensionError("cannot compose " + p.type_string() + " then " + q.type_string());
  }
  if (p.is_scalar()) return q.scaled(p.as_scalar());
  if (q.is_scalar()) return p.scaled(q.as_scalar());
  if (p.is_state()) {
    if (q.is_effect()) return Process<S>(bct::pair(q.as_effect(), p.as_state()));
    return Process<S>(bct::apply(q.as_tensor(), p.as_state()));
  }
  if (p.is_effect()) {
    // q starts on the trivial system, so it is a state.
    return Process<S>(bct::measure_prepare(p.as_effect(), q.as_state()));
  }
  if (q.is_effect()) return Process<S>(bct::pull(q.as_effect(), p.as_tensor()));
  return Process<S>(bct::compose_seq(p.as_tensor(), q.as_tensor()));
}

namespace detail {

/// ρ ⊠ t for a state ρ on A and t : B -> C.
template <class S>
Process<S> state_par_tensor(const bct::BctState<S>& rho, const bct::TransformationTensor<S>& t) {
  return then(Process<S>(t), Process<S>(bct::prepare_left(rho, t.out_shape())));
}

/// t ⊠ ρ: prepare on the left and swap the new system to the right.
template <class S>
Process<S> tensor_par_state(const bct::TransformationTensor<S>& t, const bct::BctState<S>& rho) {
  auto lifted = bct::compose_seq(bct::prepare_left(rho, t.out_shape()), bct::swap<S>(rho.shape, t.out_shape()));
  return then(Process<S>(t), Process<S>(lifted));
}

/// e ⊠ t for an effect e on A and t : B -> C.
template <class S>
Process<S> effect_par_tensor(const bct::BctEffect<S>& e, const bct::TransformationTensor<S>& t) {
  return then(Process<S>(bct::measure_left(e, t.in_shape())), Process<S>(t));
}

template <class S>
Process<S> tensor_par_effect(const bct::TransformationTensor<S>& t, const bct::BctEffect<S>& e) {
  auto lifted = bct::compose_seq(bct::swap<S>(t.in_shape(), e.shape), bct::measure_left(e, t.in_shape()));
  return then(Process<S>(lifted), Process<S>(t));
}

}  // namespace detail

/// p ⊠ q.
template <class S>
Process<S> par(const Process<S>& p, const Process<S>& q) {
  if (p.is_scalar()) return q.scaled(p.as_scalar());
  if (q.is_scalar()) return p.scaled(q.as_scalar());
  if (p.is_state() && q.is_state()) return Process<S>(bct::par_states(p.as_state(), q.as_state()));
  if (p.is_effect() && q.is_effect()) return Process<S>(bct::par_effects(p.as_effect(), q.as_effect()));
  if (p.is_tensor() && q.is_tensor()) return Process<S>(bct::compose_par(p.as_tensor(), q.as_tensor()));
  if (p.is_state() && q.is_effect()) return Process<S>(bct::measure_prepare(q.as_effect(), p.as_state()));
  if (p.is_effect() && q.is_state()) return Process<S>(bct::measure_prepare(p.as_effect(), q.as_state()));
  if (p.is_state()) return detail::state_par_tensor(p.as_state(), q.as_tensor());
  if (q.is_state()) return detail::tensor_par_state(p.as_tensor(), q.as_state());
  if (p.is_effect()) return detail::effect_par_tensor(p.as_effect(), q.as_tensor());
  return detail::tensor_par_effect(p.as_tensor(), q.as_effect());
}

/// ξ of any process; scalars map to 1×1 matrices.
template <class S>
classical::ClassicalMap<S> xi(const Process<S>& p) {
  if (p.is_scalar()) return classical::ClassicalMap<S>::scalar(p.as_scalar());
  if (p.is_state()) return ontic::xi_state(p.as_state());
  if (p.is_effect()) return ontic::xi_effect(p.as_effect());
  return ontic::xi_transformation(p.as_tensor());
}

template <class S>
nlohmann::json to_json(const Process<S>& p) {
  if (p.is_scalar()) return ScalarTraits<S>::to_json(p.as_scalar());
  if (p.is_state()) return bct::to_json(p.as_state());
  if (p.is_effect()) return bct::to_json(p.as_effect());
  return bct::to_json(p.as_tensor());
}

}  // namespace bctk
