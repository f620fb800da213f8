// Copyright 2026 The VSR Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <exception>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "vsr/error.hpp"
#include "vsr/lexer.hpp"
#include "vsr/parser.hpp"
#include "vsr/raw_ast.hpp"

namespace vsr {

/// Input is not recognizably Verilog at all.
struct NotCode {
  std::vector<Diagnostic> diagnostics;
};

/// Input looks like Verilog but is outside the grammar or malformed.
struct ParseFail {
  std::vector<Diagnostic> diagnostics;
};

struct Parsed {
  RawAst ast;
};

using ValidityClass = std::variant<NotCode, ParseFail, Parsed>;

enum class Validity { NotCode, ParseFail, Parsed };

inline Validity validity_of(const ValidityClass& v) {
  return static_cast<Validity>(v.index());
}

inline std::string_view to_string(Validity v) {
  switch (v) {
    case Validity::NotCode: return "not_code";
    case Validity::ParseFail: return "parse_fail";
    case Validity::Parsed: return "parsed";
  }
  return "?";
}

/// True iff the stream holds a `module` keyword followed later by `endmodule`.
inline bool looks_like_module(const std::vector<Token>& tokens) {
  bool seen_module = false;
  for (const auto& t : tokens) {
    if (t.is_keyword("module")) seen_module = true;
    if (seen_module && t.is_keyword("endmodule")) return true;
  }
  return false;
}

/// Three-way validity classification. Never throws: text that does not lex,
/// or lexes without a module/endmodule pair, is NotCode; code that fails the
/// grammar is ParseFail.
inline ValidityClass classify(std::string_view source) noexcept {
  std::vector<Token> tokens;
  try {
    tokens = lex(source);
  } catch (const LexError& e) {
    return NotCode{{e.diagnostic()}};
  } catch (const std::exception& e) {
    return NotCode{{Diagnostic{Severity::Error, e.what(), {}}}};
  }
  if (!looks_like_module(tokens)) {
    return NotCode{{Diagnostic{Severity::Error, "no module ... endmodule found",
                               Span{0, source.size()}}}};
  }
  try {
    return Parsed{parse(tokens)};
  } catch (const ParseError& e) {
    return ParseFail{{e.diagnostic()}};
  } catch (const std::exception& e) {
    return ParseFail{{Diagnostic{Severity::Error, e.what(), {}}}};
  }
}

inline const std::vector<Diagnostic>* diagnostics_of(const ValidityClass& v) {
  if (const auto* n = std::get_if<NotCode>(&v)) return &n->diagnostics;
  if (const auto* f = std::get_if<ParseFail>(&v)) return &f->diagnostics;
  return nullptr;
}

}  // namespace vsr
