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

// Random closed circuits, emitted as source text so that they go through the
// whole front end. At most three wires of dimension at most three.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bctk/random.hpp"
#include "bctk/scalar.hpp"

namespace bctk::dsl {

namespace detail {

class CircuitWriter {
 public:
  CircuitWriter(rng::Rng& rng, std::uint32_t max_dim) : rng_(rng), max_dim_(std::min<std::uint32_t>(max_dim, 3)) {}

  std::string run() {
    const auto wires = static_cast<std::size_t>(rng_.uniform(1, 3));
    for (std::size_t w = 0; w < wires; ++w) {
      // three wires of dimension three make the ontic fold needlessly large
      const std::uint32_t cap = wires == 3 && w > 0 ? 2 : max_dim_;
      wires_.push_back(elem(rng::random_elem(rng_, cap)));
    }
    prepare();
    const auto middle = rng_.uniform(0, 3);
    for (std::int64_t s = 0; s < middle; ++s) middle_stage();
    measure();
    text_ += "circuit c =";
    for (std::size_t s = 0; s < stages_.size(); ++s) text_ += (s ? " ; " : " ") + stages_[s];
    text_ += "\neval c\n";
    return text_;
  }

 private:
  std::string fresh(const std::string& prefix) { return prefix + std::to_string(counter_++); }

  std::string elem(std::uint32_t n) {
    const std::string name = "e" + std::to_string(n);
    if (dims_.emplace(name, SystemShape{n}).second) text_ += "system " + name + " = elem " + std::to_string(n) + "\n";
    return name;
  }

  std::string pair_system(const std::string& a, const std::string& b) {
    const std::string name = a + "_" + b;
    if (dims_.emplace(name, concat(dims_.at(a), dims_.at(b))).second) {
      text_ += "system " + name + " = " + a + " * " + b + "\n";
    }
    return name;
  }

  static std::string weight(const Rational& w) { return w.get_str(); }

  std::string vector_body(const std::vector<Rational>& w, bool is_effect) {
    std::string body;
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (sgn(w[k]) == 0) continue;
      body += (body.empty() ? "mix " : " + ") + weight(w[k]) + " " + std::to_string(k + 1);
    }
    return body.empty() ? (is_effect ? "discard" : "uniform") : body;
  }

  std::string state(const std::string& sys) {
    const auto name = fresh("rho");
    const auto rho = rng::random_state<Rational>(rng_, dims_.at(sys), rng_.chance(70));
    text_ += "state " + name + " : " + sys + " = " + vector_body(rho.weights, false) + "\n";
    return name;
  }

  std::string effect(const std::string& sys) {
    const auto name = fresh("eff");
    if (rng_.chance(20)) {
      text_ += "effect " + name + " : " + sys + " = discard\n";
      return name;
    }
    const auto e = rng::random_effect<Rational>(rng_, dims_.at(sys));
    text_ += "effect " + name + " : " + sys + " = " + vector_body(e.weights, true) + "\n";
    return name;
  }

  std::string atomic(const std::string& in, const std::string& out) {
    const auto name = fresh("t");
    const auto t = rng::random_tensor<Rational>(rng_, dims_.at(in), dims_.at(out), rng_.chance(50));
    std::string body;
    for (const auto& [k, w] : t.coeffs()) {
      body += (body.empty() ? "atomic " : " + ") + std::to_string(k.in) + " -> " + std::to_string(k.out) + " tau " +
              std::to_string(k.tau) + " w " + weight(w);
    }
    if (body.empty()) body = "atomic 1 -> 1 tau 0 w 0";
    text_ += "gate " + name + " : " + in + " -> " + out + " = " + body + "\n";
    return name;
  }

  std::string rev(const std::string& sys) {
    const auto name = fresh("r");
    const auto spec = rng::random_reversible_spec(rng_, dims_.at(sys).dim());
    std::string body = "rev";
    for (auto p : spec.perm) body += " " + std::to_string(p);
    body += " bits";
    for (auto b : spec.sigma) body += " " + std::to_string(b);
    text_ += "gate " + name + " : " + sys + " -> " + sys + " = " + body + "\n";
    return name;
  }

  std::string builtin(const std::string& kind, const std::string& a, const std::string& b, const std::string& in,
                      const std::string& out) {
    const auto name = fresh(kind == "swap" ? "sw" : "nu");
    text_ += "gate " + name + " : " + in + " -> " + out + " = " + kind + " " + a + " " + b + "\n";
    return name;
  }

  void prepare() {
    std::string stage;
    for (std::size_t w = 0; w < wires_.size();) {
      std::string box;
      if (w + 1 < wires_.size() && rng_.chance(40)) {
        box = state(pair_system(wires_[w], wires_[w + 1]));
        w += 2;
      } else {
        box = state(wires_[w]);
        w += 1;
      }
      stage += (stage.empty() ? "" : " | ") + box;
    }
    stages_.push_back(stage);
  }

  void measure() {
    std::string stage;
    for (std::size_t w = 0; w < wires_.size();) {
      std::string box;
      if (w + 1 < wires_.size() && rng_.chance(40)) {
        box = effect(pair_system(wires_[w], wires_[w + 1]));
        w += 2;
      } else {
        box = effect(wires_[w]);
        w += 1;
      }
      stage += (stage.empty() ? "" : " | ") + box;
    }
    stages_.push_back(stage);
  }

  // A stage that fuses a pair is followed by a gate on the fused wire and the
  // inverse fusion, with every other box replaced by its identity wire.
  void middle_stage() {
    std::vector<std::string> boxes;
    std::vector<std::size_t> spans;
    std::vector<std::string> next = wires_;
    std::optional<std::size_t> fused_at;
    std::string fused_gate, unfuse;
    for (std::size_t w = 0; w < wires_.size(); w += spans.back()) {
      const auto pick = rng_.uniform(0, 9);
      if (w + 1 < wires_.size() && pick >= 7) {
        const auto& a = wires_[w];
        const auto& b = wires_[w + 1];
        const auto ab = pair_system(a, b);
        if (pick == 7) {
          boxes.push_back(builtin("swap", a, b, ab, pair_system(b, a)));
          std::swap(next[w], next[w + 1]);
        } else if (pick == 8 || fused_at) {
          boxes.push_back(atomic(ab, ab));
        } else {
          const auto fused = elem(static_cast<std::uint32_t>(composite_dim(dims_.at(a).dim(), dims_.at(b).dim())));
          fused_at = boxes.size();
          boxes.push_back(builtin("nu", a, b, ab, fused));
          fused_gate = rng_.bit() ? atomic(fused, fused) : rev(fused);
          unfuse = builtin("nu_inv", a, b, fused, ab);
        }
        spans.push_back(2);
        continue;
      }
      const auto& sys = wires_[w];
      boxes.push_back(pick < 3 ? sys : pick < 8 ? atomic(sys, sys) : rev(sys));
      spans.push_back(1);
    }
    stages_.push_back(join(boxes));
    if (fused_at) {
      std::vector<std::string> mid, last;
      for (std::size_t k = 0, w = 0; k < boxes.size(); w += spans[k], ++k) {
        const auto wire = spans[k] == 2 ? pair_system(next[w], next[w + 1]) : next[w];
        mid.push_back(k == *fused_at ? fused_gate : wire);
        last.push_back(k == *fused_at ? unfuse : wire);
      }
      stages_.push_back(join(mid));
      stages_.push_back(join(last));
    }
    wires_ = next;
  }

  static std::string join(const std::vector<std::string>& boxes) {
    std::string s;
    for (const auto& b : boxes) s += (s.empty() ? "" : " | ") + b;
    return s;
  }

  rng::Rng& rng_;
  std::uint32_t max_dim_;
  std::map<std::string, SystemShape> dims_;
  std::vector<std::string> wires_;
  std::vector<std::string> stages_;
  std::string text_;
  int counter_ = 0;
};

}  // namespace detail

/// Source text of a random closed circuit named `c`.
inline std::string random_circuit(rng::Rng& rng, std::uint32_t max_dim = 3) {
  return detail::CircuitWriter(rng, max_dim).run();
}

}  // namespace bctk::dsl
