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

#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "bctk/dsl/ast.hpp"

namespace bctk::dsl {

enum class TokenKind { ident, integer, symbol, end };

struct Token {
  TokenKind kind = TokenKind::end;
  std::string text;  // symbols: "=", ":", "->", "*", "+", ";", "|", "/", "(", ")", ","
  SourceSpan span;
};

/// Splits one source line into tokens. `#` starts a comment.
inline std::vector<Token> lex_line(std::string_view line, std::size_t line_no, std::vector<Diagnostic>& diags) {
  std::vector<Token> out;
  std::size_t pos = 0;
  auto span = [&](std::size_t start) { return SourceSpan{line_no, start + 1, pos + 1}; };
  while (pos < line.size()) {
    const char c = line[pos];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
      continue;
    }
    const std::size_t start = pos;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos < line.size() &&
             (std::isalnum(static_cast<unsigned char>(line[pos])) || line[pos] == '_' || line[pos] == '\'')) {
        ++pos;
      }
      out.push_back({TokenKind::ident, std::string(line.substr(start, pos - start)), span(start)});
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos < line.size() && std::isdigit(static_cast<unsigned char>(line[pos]))) ++pos;
      out.push_back({TokenKind::integer, std::string(line.substr(start, pos - start)), span(start)});
    } else if (c == '-' && pos + 1 < line.size() && line[pos + 1] == '>') {
      pos += 2;
      out.push_back({TokenKind::symbol, "->", span(start)});
    } else if (std::string_view("=:*+;|/(),").find(c) != std::string_view::npos) {
      ++pos;
      out.push_back({TokenKind::symbol, std::string(1, c), span(start)});
    } else {
      ++pos;
      diags.push_back({span(start), std::string("unexpected character '") + c + "'"});
      return {};
    }
  }
  out.push_back({TokenKind::end, "", SourceSpan{line_no, pos + 1, pos + 1}});
  return out;
}

}  // namespace bctk::dsl
