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

// Line-oriented LL(1) parser.
//
//   system NAME = elem INT | NAME * NAME
//   state  NAME : SYS = pure LABEL | uniform | mix W LABEL (+ W LABEL)*
//   effect NAME : SYS = pure LABEL | discard | mix W LABEL (+ W LABEL)*
//   gate   NAME : SYS -> SYS = atomic TERM (+ TERM)* | id | swap SYS SYS
//                            | nu SYS SYS | nu_inv SYS SYS | rev INT+ bits BIT+
//   TERM   := LABEL -> LABEL tau BIT w W
//   circuit NAME = BOX (| BOX)* (; BOX (| BOX)*)*
//   eval NAME
//
// LABEL is a global label INT or a nested label such as ((1,2);1). W is INT
// or INT/INT. A syntax error abandons its line; parsing continues with the
// next one and all diagnostics are reported together.

#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "bctk/dsl/ast.hpp"
#include "bctk/dsl/lexer.hpp"

namespace bctk::dsl {

namespace detail {

struct SyntaxError {
  Diagnostic diag;
};

class LineParser {
 public:
  explicit LineParser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Decl parse_decl() {
    const Token& head = peek();
    if (head.kind != TokenKind::ident) fail(head, "expected a declaration keyword");
    if (head.text == "system") return parse_system();
    if (head.text == "state") return parse_vector(false);
    if (head.text == "effect") return parse_vector(true);
    if (head.text == "gate") return parse_gate();
    if (head.text == "circuit") return parse_circuit();
    if (head.text == "eval") return parse_eval();
    fail(head, "unknown declaration '" + head.text + "'");
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] static void fail(const Token& at, const std::string& message) {
    throw SyntaxError{{at.span, message}};
  }

  static std::string describe(const Token& t) {
    return t.kind == TokenKind::end ? "end of line" : "'" + t.text + "'";
  }

  bool at_symbol(const std::string& s) const { return peek().kind == TokenKind::symbol && peek().text == s; }
  bool at_keyword(const std::string& s) const { return peek().kind == TokenKind::ident && peek().text == s; }

  const Token& expect_symbol(const std::string& s) {
    if (!at_symbol(s)) fail(peek(), "expected '" + s + "', found " + describe(peek()));
    return advance();
  }
  const Token& expect_keyword(const std::string& s) {
    if (!at_keyword(s)) fail(peek(), "expected '" + s + "', found " + describe(peek()));
    return advance();
  }
  Ident expect_ident(const std::string& what) {
    if (peek().kind != TokenKind::ident) fail(peek(), "expected " + what + ", found " + describe(peek()));
    const Token& t = advance();
    return {t.text, t.span};
  }
  std::uint64_t expect_int(const std::string& what) {
    if (peek().kind != TokenKind::integer) fail(peek(), "expected " + what + ", found " + describe(peek()));
    const Token& t = advance();
    try {
      return std::stoull(t.text);
    } catch (const std::out_of_range&) {
      fail(t, "integer out of range");
    }
  }
  Bit expect_bit() {
    const Token& t = peek();
    const auto v = expect_int("a bit");
    if (v > 1) fail(t, "expected 0 or 1");
    return static_cast<Bit>(v);
  }
  void expect_end() {
    if (peek().kind != TokenKind::end) fail(peek(), "unexpected " + describe(peek()));
  }

  SourceSpan span_from(const SourceSpan& start) const {
    const auto& last = tokens_[pos_ > 0 ? pos_ - 1 : 0];
    return {start.line, start.column, last.span.end_column};
  }

  std::string parse_weight() {
    std::string text = std::to_string(expect_int("a weight"));
    if (at_symbol("/")) {
      advance();
      const Token& t = peek();
      const auto den = expect_int("a denominator");
      if (den == 0) fail(t, "zero denominator");
      text += "/" + std::to_string(den);
    }
    return text;
  }

  LabelRef parse_label() {
    const SourceSpan start = peek().span;
    if (peek().kind == TokenKind::integer) {
      const auto q = expect_int("a label");
      if (q == 0) fail(tokens_[pos_ - 1], "labels are 1-based");
      return {Label{q}, span_from(start)};
    }
    expect_symbol("(");
    PureLabel label;
    parse_label_body(label);
    expect_symbol(")");
    return {label, span_from(start)};
  }

  // body := INT | "(" body "," INT ")" ";" BIT
  void parse_label_body(PureLabel& label) {
    if (at_symbol("(")) {
      advance();
      parse_label_body(label);
      expect_symbol(",");
      label.idx.push_back(static_cast<std::uint32_t>(expect_int("an index")));
      expect_symbol(")");
      expect_symbol(";");
      label.bits.push_back(expect_bit());
    } else {
      label.idx.push_back(static_cast<std::uint32_t>(expect_int("an index")));
    }
  }

  SystemDecl parse_system() {
    const SourceSpan start = advance().span;
    SystemDecl d;
    d.name = expect_ident("a system name");
    expect_symbol("=");
    if (at_keyword("elem")) {
      advance();
      const Token& t = peek();
      const auto n = expect_int("a dimension");
      if (n == 0 || n > 1u << 16) fail(t, "dimension must be between 1 and 65536");
      d.elem = static_cast<std::uint32_t>(n);
    } else {
      d.left = expect_ident("'elem' or a system name");
      expect_symbol("*");
      d.right = expect_ident("a system name");
    }
    expect_end();
    d.span = span_from(start);
    return d;
  }

  VectorDecl parse_vector(bool is_effect) {
    const SourceSpan start = advance().span;
    VectorDecl d;
    d.is_effect = is_effect;
    d.name = expect_ident(is_effect ? "an effect name" : "a state name");
    expect_symbol(":");
    d.system = expect_ident("a system name");
    expect_symbol("=");
    if (at_keyword("pure")) {
      advance();
      const SourceSpan s = peek().span;
      auto label = parse_label();
      d.kind = VectorDecl::Kind::pure;
      d.terms.push_back({"1", label, span_from(s)});
    } else if (at_keyword(is_effect ? "discard" : "uniform")) {
      advance();
      d.kind = VectorDecl::Kind::flat;
    } else if (at_keyword("mix")) {
      advance();
      d.kind = VectorDecl::Kind::mix;
      do {
        if (!d.terms.empty()) advance();
        const SourceSpan s = peek().span;
        auto w = parse_weight();
        auto label = parse_label();
        d.terms.push_back({w, label, span_from(s)});
      } while (at_symbol("+"));
    } else {
      fail(peek(), std::string("expected 'pure', '") + (is_effect ? "discard" : "uniform") + "' or 'mix', found " +
                       describe(peek()));
    }
    expect_end();
    d.span = span_from(start);
    return d;
  }

  GateDecl parse_gate() {
    const SourceSpan start = advance().span;
    GateDecl d;
    d.name = expect_ident("a gate name");
    expect_symbol(":");
    d.in = expect_ident("an input system");
    expect_symbol("->");
    d.out = expect_ident("an output system");
    expect_symbol("=");
    const Token& kind = peek();
    if (kind.kind != TokenKind::ident) fail(kind, "expected a gate body, found " + describe(kind));
    advance();
    if (kind.text == "atomic") {
      d.kind = GateDecl::Kind::atomic;
      do {
        if (!d.terms.empty()) advance();
        const SourceSpan s = peek().span;
        TermDecl t;
        t.in = parse_label();
        expect_symbol("->");
        t.out = parse_label();
        expect_keyword("tau");
        t.tau = expect_bit();
        expect_keyword("w");
        t.weight = parse_weight();
        t.span = span_from(s);
        d.terms.push_back(std::move(t));
      } while (at_symbol("+"));
    } else if (kind.text == "id") {
      d.kind = GateDecl::Kind::id;
    } else if (kind.text == "swap" || kind.text == "nu" || kind.text == "nu_inv") {
      d.kind = kind.text == "swap" ? GateDecl::Kind::swap
               : kind.text == "nu" ? GateDecl::Kind::nu
                                   : GateDecl::Kind::nu_inv;
      d.arg1 = expect_ident("a system name");
      d.arg2 = expect_ident("a system name");
    } else if (kind.text == "rev") {
      d.kind = GateDecl::Kind::rev;
      while (peek().kind == TokenKind::integer) d.perm.push_back(static_cast<std::uint32_t>(expect_int("an image")));
      if (d.perm.empty()) fail(peek(), "expected a permutation");
      expect_keyword("bits");
      while (peek().kind == TokenKind::integer) d.bits.push_back(expect_bit());
    } else {
      fail(kind, "unknown gate body '" + kind.text + "'");
    }
    expect_end();
    d.span = span_from(start);
    return d;
  }

  CircuitDecl parse_circuit() {
    const SourceSpan start = advance().span;
    CircuitDecl d;
    d.name = expect_ident("a circuit name");
    expect_symbol("=");
    do {
      if (!d.stages.empty()) advance();
      Stage stage;
      const SourceSpan s = peek().span;
      do {
        if (!stage.boxes.empty()) advance();
        stage.boxes.push_back(expect_ident("a box name"));
      } while (at_symbol("|"));
      stage.span = span_from(s);
      d.stages.push_back(std::move(stage));
    } while (at_symbol(";"));
    expect_end();
    d.span = span_from(start);
    return d;
  }

  EvalDecl parse_eval() {
    const SourceSpan start = advance().span;
    EvalDecl d;
    d.name = expect_ident("a circuit name");
    expect_end();
    d.span = span_from(start);
    return d;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a whole source text. Throws ParseError with every diagnostic.
inline Program parse(const std::string& text) {
  Program program;
  std::vector<Diagnostic> diags;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto tokens = lex_line(line, line_no, diags);
    if (tokens.empty() || tokens.front().kind == TokenKind::end) continue;
    try {
      program.decls.push_back(detail::LineParser(std::move(tokens)).parse_decl());
    } catch (const detail::SyntaxError& e) {
      diags.push_back(e.diag);
    }
  }
  if (diags.empty() && program.decls.empty()) diags.push_back({SourceSpan{1, 1, 1}, "no declarations"});
  if (!diags.empty()) throw ParseError(std::move(diags));
  return program;
}

}  // namespace bctk::dsl
