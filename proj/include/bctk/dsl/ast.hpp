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

// Syntax tree of the circuit language. Weights are kept as their source text
// so that the tree is independent of the scalar backend.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bctk/scalar.hpp"
#include "bctk/systems.hpp"

namespace bctk::dsl {

/// 1-based line and column range [column, end_column) on one line.
struct SourceSpan {
  std::size_t line = 0;
  std::size_t column = 0;
  std::size_t end_column = 0;

  std::string to_string() const { return std::to_string(line) + ":" + std::to_string(column); }
};

struct Diagnostic {
  SourceSpan span;
  std::string message;

  std::string to_string() const { return span.to_string() + ": " + message; }
};

/// Carries every diagnostic of a failed parse or type check.
class ParseError : public Error {
 public:
  explicit ParseError(std::vector<Diagnostic> diagnostics)
      : Error(join(diagnostics)), diagnostics_(std::move(diagnostics)) {}

  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  static std::string join(const std::vector<Diagnostic>& ds) {
    std::string text;
    for (const auto& d : ds) text += (text.empty() ? "" : "\n") + d.to_string();
    return text;
  }

  std::vector<Diagnostic> diagnostics_;
};

struct Ident {
  std::string name;
  SourceSpan span;
};

/// A global label (INT) or a nested pure label such as ((1,2);1).
struct LabelRef {
  std::variant<Label, PureLabel> value;
  SourceSpan span;
};

struct SystemDecl {
  Ident name;
  std::optional<std::uint32_t> elem;  // `elem INT`
  Ident left, right;                  // `left * right`
  SourceSpan span;
};

struct WeightedLabel {
  std::string weight;
  LabelRef label;
  SourceSpan span;
};

/// `state` and `effect` share one form.
struct VectorDecl {
  enum class Kind { pure, flat, mix };  // flat: `uniform` for states, `discard` for effects
  bool is_effect = false;
  Ident name;
  Ident system;
  Kind kind = Kind::pure;
  std::vector<WeightedLabel> terms;  // one term with weight "1" for pure
  SourceSpan span;
};

struct TermDecl {
  LabelRef in;
  LabelRef out;
  Bit tau = 0;
  std::string weight;
  SourceSpan span;
};

struct GateDecl {
  enum class Kind { atomic, id, swap, nu, nu_inv, rev };
  Ident name;
  Ident in;
  Ident out;
  Kind kind = Kind::atomic;
  std::vector<TermDecl> terms;
  Ident arg1, arg2;  // systems of swap / nu / nu_inv
  std::vector<std::uint32_t> perm;
  std::vector<Bit> bits;
  SourceSpan span;
};

struct Stage {
  std::vector<Ident> boxes;
  SourceSpan span;
};

struct CircuitDecl {
  Ident name;
  std::vector<Stage> stages;
  SourceSpan span;
};

struct EvalDecl {
  Ident name;
  SourceSpan span;
};

using Decl = std::variant<SystemDecl, VectorDecl, GateDecl, CircuitDecl, EvalDecl>;

struct Program {
  std::vector<Decl> decls;
};

}  // namespace bctk::dsl
