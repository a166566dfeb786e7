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

// Canonical text of a syntax tree: one declaration per line, single spaces.

#pragma once

#include <string>
#include <type_traits>

#include "bctk/dsl/ast.hpp"

namespace bctk::dsl {

inline std::string print(const LabelRef& l) {
  if (const auto* q = std::get_if<Label>(&l.value)) return std::to_string(*q);
  return std::get<PureLabel>(l.value).to_string();
}

inline std::string print(const Decl& decl) {
  return std::visit(
      [](const auto& d) -> std::string {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, SystemDecl>) {
          if (d.elem) return "system " + d.name.name + " = elem " + std::to_string(*d.elem);
          return "system " + d.name.name + " = " + d.left.name + " * " + d.right.name;
        } else if constexpr (std::is_same_v<T, VectorDecl>) {
          std::string text = std::string(d.is_effect ? "effect " : "state ") + d.name.name + " : " + d.system.name + " = ";
          switch (d.kind) {
            case VectorDecl::Kind::pure:
              return text + "pure " + print(d.terms.front().label);
            case VectorDecl::Kind::flat:
              return text + (d.is_effect ? "discard" : "uniform");
            case VectorDecl::Kind::mix:
              text += "mix";
              for (std::size_t k = 0; k < d.terms.size(); ++k) {
                text += (k ? " + " : " ") + d.terms[k].weight + " " + print(d.terms[k].label);
              }
              return text;
          }
          return text;
        } else if constexpr (std::is_same_v<T, GateDecl>) {
          std::string text = "gate " + d.name.name + " : " + d.in.name + " -> " + d.out.name + " = ";
          switch (d.kind) {
            case GateDecl::Kind::atomic:
              text += "atomic";
              for (std::size_t k = 0; k < d.terms.size(); ++k) {
                const auto& t = d.terms[k];
                text += (k ? " + " : " ") + print(t.in) + " -> " + print(t.out) + " tau " + std::to_string(t.tau) +
                        " w " + t.weight;
              }
              return text;
            case GateDecl::Kind::id:
              return text + "id";
            case GateDecl::Kind::swap:
              return text + "swap " + d.arg1.name + " " + d.arg2.name;
            case GateDecl::Kind::nu:
              return text + "nu " + d.arg1.name + " " + d.arg2.name;
            case GateDecl::Kind::nu_inv:
              return text + "nu_inv " + d.arg1.name + " " + d.arg2.name;
            case GateDecl::Kind::rev:
              text += "rev";
              for (auto p : d.perm) text += " " + std::to_string(p);
              text += " bits";
              for (auto b : d.bits) text += " " + std::to_string(b);
              return text;
          }
          return text;
        } else if constexpr (std::is_same_v<T, CircuitDecl>) {
          std::string text = "circuit " + d.name.name + " =";
          for (std::size_t s = 0; s < d.stages.size(); ++s) {
            text += s ? " ;" : "";
            for (std::size_t b = 0; b < d.stages[s].boxes.size(); ++b) {
              text += (b ? " | " : " ") + d.stages[s].boxes[b].name;
            }
          }
          return text;
        } else {
          return "eval " + d.name.name;
        }
      },
      decl);
}

inline std::string print(const Program& program) {
  std::string text;
  for (const auto& d : program.decls) text += print(d) + "\n";
  return text;
}

}  // namespace bctk::dsl
