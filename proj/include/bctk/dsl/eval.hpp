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

// The two evaluators. eval_bct folds stages with the process calculus;
// eval_ontic maps every box through ξ first and folds in classical-core.

#pragma once

#include <string>

#include "bctk/bct.hpp"
#include "bctk/classical.hpp"
#include "bctk/dsl/check.hpp"
#include "bctk/ontic.hpp"
#include "bctk/process.hpp"

namespace bctk::dsl {

namespace detail {

template <class S>
S weight_of(const std::string& text) {
  const Rational w = parse_fraction<Rational>(text);
  if constexpr (std::is_same_v<S, Rational>) {
    return w;
  } else {
    return ScalarTraits<S>::make(w.get_num().get_si(), w.get_den().get_si());
  }
}

inline Label label_of(const LabelRef& ref, const SystemShape& shape) {
  if (const auto* q = std::get_if<Label>(&ref.value)) return *q;
  return flatten_label(shape, std::get<PureLabel>(ref.value));
}

template <class S>
std::vector<S> vector_weights(const VectorDecl& d, const SystemShape& shape) {
  std::vector<S> w(shape.dim(), S(0));
  if (d.kind == VectorDecl::Kind::flat) {
    const S fill = d.is_effect ? S(1) : ScalarTraits<S>::make(1, static_cast<std::int64_t>(shape.dim()));
    for (auto& x : w) x = fill;
    return w;
  }
  for (const auto& t : d.terms) w[label_of(t.label, shape) - 1] += weight_of<S>(t.weight);
  return w;
}

template <class S>
bct::TransformationTensor<S> gate_tensor(const CheckedProgram& prog, const GateDecl& d, const SystemShape& in,
                                         const SystemShape& out) {
  auto system = [&](const Ident& id) { return prog.lookup(id.name).out; };
  switch (d.kind) {
    case GateDecl::Kind::atomic: {
      bct::TransformationTensor<S> t(in, out);
      for (const auto& term : d.terms) {
        t.add(label_of(term.in, in), label_of(term.out, out), term.tau, weight_of<S>(term.weight));
      }
      return t;
    }
    case GateDecl::Kind::id:
      return bct::identity<S>(in);
    case GateDecl::Kind::swap:
      return bct::swap<S>(system(d.arg1), system(d.arg2));
    case GateDecl::Kind::nu:
      return bct::nu<S>(system(d.arg1), system(d.arg2));
    case GateDecl::Kind::nu_inv:
      return bct::nu_inv<S>(system(d.arg1), system(d.arg2));
    case GateDecl::Kind::rev:
      return bct::reversible<S>(in, bct::ReversibleSpec{d.perm, d.bits});
  }
  throw Error("unknown gate kind");
}

}  // namespace detail

/// The BCT process denoted by a single box. A system name is its identity wire.
template <class S>
Process<S> box_process(const CheckedProgram& prog, const std::string& name) {
  const auto& e = prog.lookup(name);
  using Kind = CheckedProgram::Kind;
  switch (e.kind) {
    case Kind::system:
      if (e.out.is_trivial()) return Process<S>(S(1));
      return Process<S>(bct::identity<S>(e.out));
    case Kind::state:
      return Process<S>(bct::BctState<S>(e.out, detail::vector_weights<S>(prog.decl<VectorDecl>(e), e.out)));
    case Kind::effect:
      return Process<S>(bct::BctEffect<S>(e.in, detail::vector_weights<S>(prog.decl<VectorDecl>(e), e.in)));
    case Kind::gate:
      return Process<S>(detail::gate_tensor<S>(prog, prog.decl<GateDecl>(e), e.in, e.out));
    case Kind::circuit:
      break;
  }
  throw Error("'" + name + "' is not a box");
}

template <class S>
Process<S> eval_bct(const CheckedProgram& prog, const std::string& circuit) {
  const auto& e = prog.lookup(circuit);
  if (e.kind != CheckedProgram::Kind::circuit) throw Error("'" + circuit + "' is not a circuit");
  const auto& d = prog.decl<CircuitDecl>(e);
  Process<S> result;
  for (std::size_t s = 0; s < d.stages.size(); ++s) {
    Process<S> stage;
    for (const auto& box : d.stages[s].boxes) stage = par(stage, box_process<S>(prog, box.name));
    result = s == 0 ? stage : then(result, stage);
  }
  return result;
}

template <class S>
classical::ClassicalMap<S> eval_ontic(const CheckedProgram& prog, const std::string& circuit) {
  const auto& e = prog.lookup(circuit);
  if (e.kind != CheckedProgram::Kind::circuit) throw Error("'" + circuit + "' is not a circuit");
  const auto& d = prog.decl<CircuitDecl>(e);
  using Map = classical::ClassicalMap<S>;
  Map result = Map::scalar(S(1));
  for (std::size_t s = 0; s < d.stages.size(); ++s) {
    Map stage = Map::scalar(S(1));
    for (const auto& box : d.stages[s].boxes) {
      const auto& b = prog.lookup(box.name);
      Map image = b.kind == CheckedProgram::Kind::system ? Map::identity(ontic::xi_system(b.out).dim)
                                                         : xi(box_process<S>(prog, box.name));
      stage = classical::compose_par(stage, image);
    }
    result = s == 0 ? stage : classical::compose_seq(result, stage);
  }
  return result;
}

/// Both backends for one circuit and how far apart they are.
template <class S>
struct EvalResult {
  std::string name;
  Process<S> bct;
  classical::ClassicalMap<S> ontic;
  double max_abs_dev = 0;
  bool agree = true;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["name"] = name;
    j["type"] = bct.type_string();
    j["value"] = bctk::to_json(bct);
    j["bct"] = bctk::to_json(bct);
    j["ontic"] = classical::to_json(ontic);
    j["max_abs_dev"] = max_abs_dev;
    j["agree"] = agree;
    return j;
  }
};

/// Evaluates under both backends and compares ξ of the BCT result with the
/// classical fold. Closed circuits compare two scalars.
template <class S>
EvalResult<S> evaluate(const CheckedProgram& prog, const std::string& circuit, double tol = 0) {
  EvalResult<S> r{circuit, eval_bct<S>(prog, circuit), eval_ontic<S>(prog, circuit)};
  const auto image = xi(r.bct);
  if (image.in_dim() != r.ontic.in_dim() || image.out_dim() != r.ontic.out_dim()) {
    throw DimensionError("backends disagree on the type of '" + circuit + "'");
  }
  r.max_abs_dev = classical::max_abs_dev(image, r.ontic);
  r.agree = ScalarTraits<S>::exact ? image == r.ontic : r.max_abs_dev <= tol;
  return r;
}

/// ξ of a declared gate, with the ontic wire structure of each side.
template <class S>
nlohmann::json embed(const CheckedProgram& prog, const std::string& gate) {
  const auto it = prog.names.find(gate);
  if (it == prog.names.end() || it->second.kind != CheckedProgram::Kind::gate) {
    throw Error("unknown gate '" + gate + "'");
  }
  const auto& e = it->second;
  const auto t = box_process<S>(prog, gate);
  const auto in = ontic::xi_system(e.in);
  const auto out = ontic::xi_system(e.out);
  nlohmann::json j;
  j["gate"] = gate;
  j["in"] = {{"system", e.in.to_string()}, {"ontic_dim", in.dim}, {"wires", in.wires}};
  j["out"] = {{"system", e.out.to_string()}, {"ontic_dim", out.dim}, {"wires", out.wires}};
  j["map"] = classical::to_json(xi(t));
  return j;
}

}  // namespace bctk::dsl
