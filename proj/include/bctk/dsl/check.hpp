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

// Name resolution and shape checking. A checked program can be evaluated
// without further errors.

#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "bctk/bct.hpp"
#include "bctk/dsl/ast.hpp"
#include "bctk/dsl/parser.hpp"

namespace bctk::dsl {

struct CheckedProgram {
  enum class Kind { system, state, effect, gate, circuit };
  struct Entry {
    Kind kind;
    std::size_t decl;  // index into program.decls
    SystemShape in;
    SystemShape out;
  };

  Program program;
  std::map<std::string, Entry> names;
  std::vector<std::string> evals;

  const Entry& lookup(const std::string& name) const {
    auto it = names.find(name);
    if (it == names.end()) throw Error("unknown name '" + name + "'");
    return it->second;
  }
  template <class T>
  const T& decl(const Entry& e) const {
    return std::get<T>(program.decls.at(e.decl));
  }
};

namespace detail {

inline std::string kind_name(CheckedProgram::Kind k) {
  switch (k) {
    case CheckedProgram::Kind::system:
      return "system";
    case CheckedProgram::Kind::state:
      return "state";
    case CheckedProgram::Kind::effect:
      return "effect";
    case CheckedProgram::Kind::gate:
      return "gate";
    case CheckedProgram::Kind::circuit:
      return "circuit";
  }
  return "name";
}

class Checker {
 public:
  explicit Checker(CheckedProgram& out) : out_(out) {}

  void run() {
    for (std::size_t k = 0; k < out_.program.decls.size(); ++k) {
      std::visit([&](const auto& d) { check(d, k); }, out_.program.decls[k]);
    }
    if (!diags_.empty()) throw ParseError(std::move(diags_));
  }

 private:
  void error(const SourceSpan& span, const std::string& message) { diags_.push_back({span, message}); }

  bool declare(const Ident& name, CheckedProgram::Kind kind, std::size_t decl, SystemShape in, SystemShape out) {
    if (out_.names.count(name.name)) {
      error(name.span, "duplicate name '" + name.name + "'");
      return false;
    }
    out_.names.emplace(name.name, CheckedProgram::Entry{kind, decl, std::move(in), std::move(out)});
    return true;
  }

  const SystemShape* system(const Ident& name) {
    auto it = out_.names.find(name.name);
    if (it == out_.names.end()) {
      error(name.span, "undeclared system '" + name.name + "'");
      return nullptr;
    }
    if (it->second.kind != CheckedProgram::Kind::system) {
      error(name.span, "'" + name.name + "' is a " + kind_name(it->second.kind) + ", not a system");
      return nullptr;
    }
    return &it->second.out;
  }

  std::optional<Label> resolve(const LabelRef& ref, const SystemShape& shape) {
    if (const auto* q = std::get_if<Label>(&ref.value)) {
      if (*q < 1 || *q > shape.dim()) {
        error(ref.span, "label " + std::to_string(*q) + " out of range for " + shape.to_string());
        return std::nullopt;
      }
      return *q;
    }
    const auto& label = std::get<PureLabel>(ref.value);
    if (!label.fits(shape)) {
      error(ref.span, "label " + label.to_string() + " does not fit " + shape.to_string());
      return std::nullopt;
    }
    return flatten_label(shape, label);
  }

  std::optional<Rational> weight(const std::string& text, const SourceSpan& span) {
    try {
      return parse_fraction<Rational>(text);
    } catch (const Error& e) {
      error(span, e.what());
      return std::nullopt;
    }
  }

  void check(const SystemDecl& d, std::size_t k) {
    if (d.elem) {
      declare(d.name, CheckedProgram::Kind::system, k, {}, SystemShape{*d.elem});
      return;
    }
    const auto* a = system(d.left);
    const auto* b = system(d.right);
    if (a && b) declare(d.name, CheckedProgram::Kind::system, k, {}, concat(*a, *b));
  }

  void check(const VectorDecl& d, std::size_t k) {
    const auto* shape = system(d.system);
    if (!shape) return;
    if (shape->is_trivial()) {
      error(d.system.span, "states and effects need a non-trivial system");
      return;
    }
    Rational total(0);
    for (const auto& t : d.terms) {
      auto q = resolve(t.label, *shape);
      auto w = weight(t.weight, t.span);
      if (!q || !w) return;
      if (d.is_effect && *w > 1) error(t.span, "effect weights must not exceed 1");
      total += *w;
    }
    if (!d.is_effect && total > 1) error(d.span, "state weights sum to more than 1");
    const auto kind = d.is_effect ? CheckedProgram::Kind::effect : CheckedProgram::Kind::state;
    declare(d.name, kind, k, d.is_effect ? *shape : SystemShape{}, d.is_effect ? SystemShape{} : *shape);
  }

  void check(const GateDecl& d, std::size_t k) {
    const auto* in = system(d.in);
    const auto* out = system(d.out);
    if (!in || !out) return;
    if (in->is_trivial() || out->is_trivial()) {
      error(d.span, "gates need non-trivial input and output systems");
      return;
    }
    auto require = [&](bool ok, const std::string& message) {
      if (!ok) error(d.span, message);
      return ok;
    };
    bool ok = true;
    switch (d.kind) {
      case GateDecl::Kind::atomic: {
        std::map<Label, Rational> rows;
        for (const auto& t : d.terms) {
          auto i = resolve(t.in, *in);
          auto l = resolve(t.out, *out);
          auto w = weight(t.weight, t.span);
          if (!i || !l || !w) return;
          rows[*i] += *w;
        }
        for (const auto& [i, total] : rows) {
          ok = ok && require(total <= 1, "row " + std::to_string(i) + " of gate '" + d.name.name +
                                             "' sums to more than 1");
        }
        break;
      }
      case GateDecl::Kind::id:
        ok = require(*in == *out, "id needs equal input and output systems");
        break;
      case GateDecl::Kind::swap:
      case GateDecl::Kind::nu:
      case GateDecl::Kind::nu_inv: {
        const auto* a = system(d.arg1);
        const auto* b = system(d.arg2);
        if (!a || !b) return;
        if (a->is_trivial() || b->is_trivial()) return void(error(d.span, "builtin needs non-trivial systems"));
        const auto ab = concat(*a, *b);
        if (d.kind == GateDecl::Kind::swap) {
          ok = require(*in == ab && *out == concat(*b, *a),
                       "swap " + d.arg1.name + " " + d.arg2.name + " has type " + ab.to_string() + "->" +
                           concat(*b, *a).to_string());
        } else {
          const auto fused = bct::fused_shape(*a, *b);
          const auto& from = d.kind == GateDecl::Kind::nu ? ab : fused;
          const auto& to = d.kind == GateDecl::Kind::nu ? fused : ab;
          ok = require(*in == from && *out == to, "builtin has type " + from.to_string() + "->" + to.to_string());
        }
        break;
      }
      case GateDecl::Kind::rev: {
        ok = require(*in == *out, "rev needs equal input and output systems") &&
             require(d.perm.size() == in->dim(), "rev needs " + std::to_string(in->dim()) + " images") &&
             require(d.bits.size() == d.perm.size(), "rev needs one bit per label");
        if (ok) {
          try {
            bct::ReversibleSpec{d.perm, d.bits}.validate();
          } catch (const Error& e) {
            ok = require(false, e.what());
          }
        }
        break;
      }
    }
    if (ok) declare(d.name, CheckedProgram::Kind::gate, k, *in, *out);
  }

  void check(const CircuitDecl& d, std::size_t k) {
    SystemShape circuit_in, previous_out;
    for (std::size_t s = 0; s < d.stages.size(); ++s) {
      SystemShape stage_in, stage_out;
      for (const auto& box : d.stages[s].boxes) {
        auto it = out_.names.find(box.name);
        if (it == out_.names.end()) return void(error(box.span, "undeclared box '" + box.name + "'"));
        const auto& e = it->second;
        if (e.kind == CheckedProgram::Kind::circuit) {
          return void(error(box.span, "'" + box.name + "' is a circuit and cannot be used as a box"));
        }
        const bool wire = e.kind == CheckedProgram::Kind::system;
        stage_in = concat(stage_in, wire ? e.out : e.in);
        stage_out = concat(stage_out, e.out);
      }
      if (s == 0) {
        circuit_in = stage_in;
      } else if (!(previous_out == stage_in)) {
        return void(error(d.stages[s].span, "shape error at stage " + std::to_string(s) + ": it gives " +
                                                previous_out.to_string() + " but stage " + std::to_string(s + 1) +
                                                " takes " + stage_in.to_string()));
      }
      previous_out = stage_out;
    }
    declare(d.name, CheckedProgram::Kind::circuit, k, circuit_in, previous_out);
  }

  void check(const EvalDecl& d, std::size_t) {
    auto it = out_.names.find(d.name.name);
    if (it == out_.names.end() || it->second.kind != CheckedProgram::Kind::circuit) {
      return void(error(d.name.span, "undeclared circuit '" + d.name.name + "'"));
    }
    out_.evals.push_back(d.name.name);
  }

  CheckedProgram& out_;
  std::vector<Diagnostic> diags_;
};

}  // namespace detail

inline CheckedProgram check(Program program) {
  CheckedProgram out;
  out.program = std::move(program);
  detail::Checker(out).run();
  return out;
}

inline CheckedProgram parse_and_check(const std::string& text) { return check(parse(text)); }

}  // namespace bctk::dsl
