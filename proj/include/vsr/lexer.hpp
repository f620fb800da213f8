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

#include <algorithm>
#include <iterator>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "vsr/error.hpp"

namespace vsr {

enum class TokenKind {
  Identifier,
  Number,
  String,
  Operator,
  Punctuation,
  Keyword,
  Directive,
};

inline std::string_view to_string(TokenKind k) {
  switch (k) {
    case TokenKind::Identifier: return "identifier";
    case TokenKind::Number: return "number";
    case TokenKind::String: return "string";
    case TokenKind::Operator: return "operator";
    case TokenKind::Punctuation: return "punctuation";
    case TokenKind::Keyword: return "keyword";
    case TokenKind::Directive: return "directive";
  }
  return "?";
}

struct Token {
  TokenKind kind;
  std::string text;
  Span span;

  bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
  bool is_keyword(std::string_view t) const { return is(TokenKind::Keyword, t); }
  bool is_op(std::string_view t) const {
    return (kind == TokenKind::Operator || kind == TokenKind::Punctuation) && text == t;
  }
};

namespace detail {

// Verilog-2005 reserved words. Constructs outside the supported subset are
// still reserved so that, e.g., `generate` fails to parse instead of being
// read as an identifier.
inline constexpr std::string_view kKeywords[] = {
    "always",     "and",         "assign",       "automatic",  "begin",
    "buf",        "bufif0",      "bufif1",       "case",       "casex",
    "casez",      "cell",        "cmos",         "config",     "deassign",
    "default",    "defparam",    "design",       "disable",    "edge",
    "else",       "end",         "endcase",      "endconfig",  "endfunction",
    "endgenerate", "endmodule",  "endprimitive", "endspecify", "endtable",
    "endtask",    "event",       "for",          "force",      "forever",
    "fork",       "function",    "generate",     "genvar",     "highz0",
    "highz1",     "if",          "ifnone",       "incdir",     "include",
    "initial",    "inout",       "input",        "instance",   "integer",
    "join",       "large",       "liblist",      "library",    "localparam",
    "macromodule", "medium",     "module",       "nand",       "negedge",
    "nmos",       "nor",         "noshowcancelled", "not",     "notif0",
    "notif1",     "or",          "output",       "parameter",  "pmos",
    "posedge",    "primitive",   "pull0",        "pull1",      "pulldown",
    "pullup",     "rcmos",       "real",         "realtime",   "reg",
    "release",    "repeat",      "rnmos",        "rpmos",      "rtran",
    "rtranif0",   "rtranif1",    "scalared",     "signed",     "specify",
    "specparam",  "strong0",     "strong1",      "supply0",    "supply1",
    "table",      "task",        "time",         "tran",       "tranif0",
    "tranif1",    "tri",         "wait",         "while",      "wire",
};

inline bool is_keyword(std::string_view word) {
  return std::find(std::begin(kKeywords), std::end(kKeywords), word) != std::end(kKeywords);
}

// Longest-match first.
inline constexpr std::string_view kOperators[] = {
    "<<<", ">>>", "===", "!==", "~&", "~|", "~^", "^~", "**", "<<", ">>",
    "==",  "!=",  "<=",  ">=",  "&&", "||", "+:", "-:", "+",  "-",  "*",
    "/",   "%",   "&",   "|",   "^",  "~",  "!",  "<",  ">",  "=",  "?",
};

inline constexpr std::string_view kPunctuation = ";,()[]{}.#@:";

inline bool ident_start(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
inline bool ident_char(unsigned char c) {
  return ident_start(c) || (c >= '0' && c <= '9') || c == '$';
}
inline bool dec_digit(unsigned char c) { return c >= '0' && c <= '9'; }
inline bool based_digit(unsigned char c) {
  return dec_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F') ||
         c == 'x' || c == 'X' || c == 'z' || c == 'Z' || c == '?' || c == '_';
}
inline bool base_char(unsigned char c) {
  switch (c) {
    case 'b': case 'B': case 'o': case 'O': case 'd': case 'D': case 'h': case 'H':
      return true;
    default:
      return false;
  }
}
inline bool space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// Length of the UTF-8 sequence starting at s[i], or 0 if malformed.
inline std::size_t utf8_length(std::string_view s, std::size_t i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) return 1;
  std::size_t len = 0;
  std::uint32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return 0;
  }
  if (i + len > s.size()) return 0;
  for (std::size_t k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) return 0;
    cp = (cp << 6) | (b & 0x3F);
  }
  // Overlong encodings, surrogates and out-of-range code points.
  if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
      (cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF) {
    return 0;
  }
  return len;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_trivia();
      if (pos_ >= src_.size()) break;
      out.push_back(next());
    }
    return out;
  }

 private:
  unsigned char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? static_cast<unsigned char>(src_[pos_ + ahead]) : 0;
  }
  bool at_end(std::size_t ahead = 0) const { return pos_ + ahead >= src_.size(); }

  [[noreturn]] void fail(const std::string& msg, std::size_t start, std::size_t end) const {
    throw LexError(msg, Span{start, end});
  }

  // Advances over one (validated) UTF-8 character inside a comment or string.
  void step_text() {
    const std::size_t n = utf8_length(src_, pos_);
    if (n == 0) fail("illegal byte sequence", pos_, pos_ + 1);
    pos_ += n;
  }

  void skip_trivia() {
    while (!at_end()) {
      const unsigned char c = peek();
      if (space(c)) {
        if (c == '\n') line_start_ = pos_ + 1;
        ++pos_;
      } else if (c == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') step_text();
      } else if (c == '/' && peek(1) == '*') {
        const std::size_t start = pos_;
        pos_ += 2;
        while (true) {
          if (at_end()) fail("unterminated block comment", start, start + 2);
          if (peek() == '*' && peek(1) == '/') {
            pos_ += 2;
            break;
          }
          if (peek() == '\n') line_start_ = pos_ + 1;
          step_text();
        }
      } else {
        return;
      }
    }
  }

  bool only_space_before_on_line() const {
    for (std::size_t i = line_start_; i < pos_; ++i) {
      if (src_[i] != ' ' && src_[i] != '\t') return false;
    }
    return true;
  }

  Token make(TokenKind kind, std::size_t start) const {
    return Token{kind, std::string(src_.substr(start, pos_ - start)), Span{start, pos_}};
  }

  Token next() {
    const std::size_t start = pos_;
    const unsigned char c = peek();

    if (c == '`') {
      if (only_space_before_on_line()) {
        // Whole-line directive, honoring backslash-newline continuations.
        while (!at_end() && peek() != '\n') {
          if (peek() == '\\' && peek(1) == '\n') {
            pos_ += 2;
            line_start_ = pos_;
            continue;
          }
          if (peek() == '/' && peek(1) == '/') break;
          step_text();
        }
        while (pos_ > start + 1 && space(static_cast<unsigned char>(src_[pos_ - 1]))) --pos_;
      } else {
        ++pos_;
        while (ident_char(peek())) ++pos_;
      }
      return make(TokenKind::Directive, start);
    }

    if (ident_start(c) || c == '$') {
      ++pos_;
      while (ident_char(peek())) ++pos_;
      if (c == '$' && pos_ == start + 1) fail("stray '$'", start, pos_);
      Token t = make(TokenKind::Identifier, start);
      if (is_keyword(t.text)) t.kind = TokenKind::Keyword;
      return t;
    }

    if (c == '\\') {
      ++pos_;
      while (!at_end() && !space(peek())) {
        if (peek() >= 0x80 || peek() < 0x21) fail("illegal character in escaped identifier", pos_, pos_ + 1);
        ++pos_;
      }
      if (pos_ == start + 1) fail("empty escaped identifier", start, pos_);
      return make(TokenKind::Identifier, start);
    }

    if (dec_digit(c) || c == '\'') return number(start);

    if (c == '"') {
      ++pos_;
      while (true) {
        if (at_end() || peek() == '\n') fail("unterminated string literal", start, start + 1);
        if (peek() == '"') {
          ++pos_;
          break;
        }
        if (peek() == '\\') {
          ++pos_;
          if (at_end()) fail("unterminated string literal", start, start + 1);
        }
        step_text();
      }
      return make(TokenKind::String, start);
    }

    for (std::string_view op : kOperators) {
      if (src_.substr(pos_, op.size()) == op) {
        pos_ += op.size();
        return make(TokenKind::Operator, start);
      }
    }
    if (kPunctuation.find(static_cast<char>(c)) != std::string_view::npos) {
      ++pos_;
      return make(TokenKind::Punctuation, start);
    }
    if (c >= 0x80) {
      if (utf8_length(src_, pos_) == 0) fail("illegal byte sequence", start, start + 1);
      fail("non-ASCII character outside comment or string", start, start + utf8_length(src_, pos_));
    }
    fail("illegal character", start, start + 1);
  }

  // Sized/unsized based literals, decimals and reals. A size and its base may
  // be separated by whitespace ("8 'hFF"); the token covers both.
  Token number(std::size_t start) {
    if (peek() != '\'') {
      while (dec_digit(peek()) || peek() == '_') ++pos_;
      bool real = false;
      if (peek() == '.' && dec_digit(peek(1))) {
        real = true;
        pos_ += 1;
        while (dec_digit(peek()) || peek() == '_') ++pos_;
      }
      if (peek() == 'e' || peek() == 'E') {
        std::size_t k = 1;
        if (peek(k) == '+' || peek(k) == '-') ++k;
        if (dec_digit(peek(k))) {
          real = true;
          pos_ += k;
          while (dec_digit(peek()) || peek() == '_') ++pos_;
        }
      }
      if (real) return make(TokenKind::Number, start);
      std::size_t look = pos_;
      while (look < src_.size() && (src_[look] == ' ' || src_[look] == '\t')) ++look;
      if (look >= src_.size() || src_[look] != '\'') return make(TokenKind::Number, start);
      pos_ = look;
    }
    // At the apostrophe of a based literal.
    const std::size_t tick = pos_;
    ++pos_;
    if (peek() == 's' || peek() == 'S') ++pos_;
    if (!base_char(peek())) fail("malformed based literal", tick, pos_ + (at_end() ? 0 : 1));
    ++pos_;
    while (peek() == ' ' || peek() == '\t') ++pos_;
    const std::size_t digits = pos_;
    while (based_digit(peek())) ++pos_;
    if (pos_ == digits) fail("based literal has no digits", tick, pos_);
    return make(TokenKind::Number, start);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_start_ = 0;
};

}  // namespace detail

/// Tokenizes `source`. Comments are dropped; backtick directives are kept as
/// Directive tokens. Throws LexError on unterminated strings or block
/// comments, and on bytes that cannot start any token.
inline std::vector<Token> lex(std::string_view source) {
  return detail::Lexer(source).run();
}

}  // namespace vsr
