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

#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "support/test_data.hpp"
#include "vsr/frontend.hpp"
#include "vsr/lexer.hpp"
#include "vsr/parser.hpp"

namespace {

using vsr::NodeKind;
using vsr::RawNode;
using vsr::TokenKind;

std::vector<TokenKind> kinds(const std::vector<vsr::Token>& toks) {
  std::vector<TokenKind> out;
  for (const auto& t : toks) out.push_back(t.kind);
  return out;
}

std::vector<NodeKind> child_kinds(const RawNode& n) {
  std::vector<NodeKind> out;
  for (const auto& c : n.children) out.push_back(c.kind);
  return out;
}

TEST(Lexer, SimpleAssign) {
  const auto toks = vsr::lex("assign y = a & b;");
  ASSERT_EQ(toks.size(), 7u);
  // `assign` is a reserved word and gets the keyword kind.
  EXPECT_EQ(kinds(toks),
            (std::vector<TokenKind>{TokenKind::Keyword, TokenKind::Identifier, TokenKind::Operator,
                                    TokenKind::Identifier, TokenKind::Operator,
                                    TokenKind::Identifier, TokenKind::Punctuation}));
  EXPECT_EQ(toks[0].text, "assign");
  EXPECT_EQ(toks[4].text, "&");
  EXPECT_EQ(toks[6].span, (vsr::Span{16, 17}));
}

TEST(Lexer, CommentOnlyIsEmpty) {
  EXPECT_TRUE(vsr::lex("/* only a comment */").empty());
  EXPECT_TRUE(vsr::lex("// line\n  // another\n").empty());
}

TEST(Lexer, UnterminatedBlockCommentReportsOpener) {
  try {
    vsr::lex("module m; /* unterminated");
    FAIL() << "expected LexError";
  } catch (const vsr::LexError& e) {
    EXPECT_EQ(e.span().start, 10u);
  }
}

TEST(Lexer, UnterminatedStringAndIllegalBytes) {
  EXPECT_THROW(vsr::lex("initial $display(\"abc"), vsr::LexError);
  EXPECT_THROW(vsr::lex("assign y = a \x01 b;"), vsr::LexError);
  EXPECT_THROW(vsr::lex("wire \xff;"), vsr::LexError);
  // Valid UTF-8 is fine inside comments and strings.
  EXPECT_NO_THROW(vsr::lex("// caf\xc3\xa9\nwire x;"));
}

TEST(Lexer, DirectivesAreTokensButNotParsed) {
  const std::string src = "`timescale 1ns/1ps\n`define W 8\nmodule m; endmodule\n";
  const auto toks = vsr::lex(src);
  ASSERT_GE(toks.size(), 2u);
  EXPECT_EQ(toks[0].kind, TokenKind::Directive);
  EXPECT_EQ(toks[0].text, "`timescale 1ns/1ps");
  EXPECT_EQ(toks[1].kind, TokenKind::Directive);
  EXPECT_TRUE(std::holds_alternative<vsr::Parsed>(vsr::classify(src)));
}

TEST(Lexer, NumbersAndOperators) {
  const auto toks = vsr::lex("x = 8'hFF + 4 'b10_1z - 3.5e2 <<< 'd7;");
  std::vector<std::string> texts;
  for (const auto& t : toks) texts.push_back(t.text);
  EXPECT_EQ(texts, (std::vector<std::string>{"x", "=", "8'hFF", "+", "4 'b10_1z", "-", "3.5e2",
                                             "<<<", "'d7", ";"}));
}

TEST(Lexer, SpansIncreaseAndSliceSource) {
  for (const auto& path : vsr_test::golden_files()) {
    const std::string src = vsr_test::read_text(path);
    const auto toks = vsr::lex(src);
    std::size_t prev_end = 0;
    for (const auto& t : toks) {
      ASSERT_FALSE(t.text.empty());
      ASSERT_GE(t.span.start, prev_end) << path;
      ASSERT_LT(t.span.start, t.span.end);
      ASSERT_EQ(src.substr(t.span.start, t.span.end - t.span.start), t.text) << path;
      prev_end = t.span.end;
    }
  }
}

TEST(Parser, MinimalModule) {
  const auto ast = vsr::parse_source("module m(input a, output b); assign b = a; endmodule");
  EXPECT_EQ(ast.root.kind, NodeKind::SourceUnit);
  ASSERT_EQ(ast.root.children.size(), 1u);
  const RawNode& m = ast.root.children[0];
  EXPECT_EQ(m.kind, NodeKind::ModuleDef);
  EXPECT_EQ(m.name, "m");
  EXPECT_EQ(child_kinds(m), (std::vector<NodeKind>{NodeKind::InputPort, NodeKind::OutputPort,
                                                   NodeKind::ContinuousAssign}));
}

TEST(Parser, AlwaysShape) {
  const auto ast = vsr::parse_source("module m; always @(posedge clk) q <= d; endmodule");
  const RawNode& always = ast.root.children.at(0).children.at(0);
  ASSERT_EQ(always.kind, NodeKind::Always);
  ASSERT_EQ(child_kinds(always),
            (std::vector<NodeKind>{NodeKind::SensList, NodeKind::NonblockingAssign}));
  const RawNode& sens = always.children[0];
  ASSERT_EQ(child_kinds(sens), (std::vector<NodeKind>{NodeKind::EdgePosedge}));
  EXPECT_EQ(child_kinds(sens.children[0]), (std::vector<NodeKind>{NodeKind::Id}));
  EXPECT_EQ(child_kinds(always.children[1]), (std::vector<NodeKind>{NodeKind::Id, NodeKind::Id}));
}

TEST(Parser, EmptyAssignFailsAtSemicolon) {
  const std::string src = "module m; assign ; endmodule";
  try {
    vsr::parse_source(src);
    FAIL() << "expected ParseError";
  } catch (const vsr::ParseError& e) {
    EXPECT_EQ(src.substr(e.span().start, e.span().end - e.span().start), ";");
  }
}

TEST(Parser, SensitivityForms) {
  const auto ast = vsr::parse_source(
      "module m; always @(negedge c or a, b) x = 1; always @* y = 2; always @(*) z = 3; endmodule");
  const RawNode& m = ast.root.children[0];
  EXPECT_EQ(child_kinds(m.children[0].children[0]),
            (std::vector<NodeKind>{NodeKind::EdgeNegedge, NodeKind::LevelSense,
                                   NodeKind::LevelSense}));
  EXPECT_EQ(child_kinds(m.children[1].children[0]), (std::vector<NodeKind>{NodeKind::StarSense}));
  EXPECT_EQ(child_kinds(m.children[2].children[0]), (std::vector<NodeKind>{NodeKind::StarSense}));
}

TEST(Parser, OperatorPrecedence) {
  const auto ast = vsr::parse_source("module m; assign y = a + b * c == d && !e; endmodule");
  const RawNode& rhs = ast.root.children[0].children[0].children[1];
  ASSERT_EQ(rhs.kind, NodeKind::LogicalAnd);
  EXPECT_EQ(rhs.children[0].kind, NodeKind::Eq);
  EXPECT_EQ(rhs.children[0].children[0].kind, NodeKind::Plus);
  EXPECT_EQ(rhs.children[0].children[0].children[1].kind, NodeKind::Times);
  EXPECT_EQ(rhs.children[1].kind, NodeKind::Not);
}

TEST(Parser, SelectsConcatAndReplication) {
  const auto ast = vsr::parse_source(
      "module m; assign y = {a[3], b[7:4], c[i +: 2], d[j -: 2], {4{e}}}; endmodule");
  const RawNode& cat = ast.root.children[0].children[0].children[1];
  EXPECT_EQ(child_kinds(cat),
            (std::vector<NodeKind>{NodeKind::BitSelect, NodeKind::PartSelect,
                                   NodeKind::PartSelectUp, NodeKind::PartSelectDown,
                                   NodeKind::Repeat}));
}

TEST(Parser, UnsupportedConstructsFail) {
  EXPECT_THROW(vsr::parse_source("module m; genvar i; endmodule"), vsr::ParseError);
  EXPECT_THROW(vsr::parse_source("module m; generate endgenerate endmodule"), vsr::ParseError);
  EXPECT_THROW(vsr::parse_source("module m; logic x; endmodule"), vsr::ParseError);
}

TEST(Parser, DeepNestingIsAParseErrorNotACrash) {
  std::string expr(5000, '(');
  expr += "a";
  expr += std::string(5000, ')');
  const std::string src = "module m; assign y = " + expr + "; endmodule";
  EXPECT_TRUE(std::holds_alternative<vsr::ParseFail>(vsr::classify(src)));
}

// Every node's span nests in its parent's; siblings appear in source order.
void check_spans(const RawNode& n, const std::string& where) {
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    const auto& c = n.children[i];
    ASSERT_TRUE(n.span.contains(c.span)) << where << " " << vsr::kind_name(c.kind);
    if (i > 0) {
      const auto& p = n.children[i - 1].span;
      ASSERT_TRUE(p.start < c.span.start || (p.start == c.span.start && p.end <= c.span.end))
          << where;
    }
    check_spans(c, where);
  }
}

TEST(Parser, GoldenSpansNestAndFollowSourceOrder) {
  for (const auto& path : vsr_test::golden_files()) {
    const auto ast = vsr::parse_source(vsr_test::read_text(path));
    for (const auto& m : ast.root.children) EXPECT_EQ(m.kind, NodeKind::ModuleDef);
    check_spans(ast.root, path.filename().string());
  }
}

TEST(Classify, Tiers) {
  EXPECT_TRUE(std::holds_alternative<vsr::NotCode>(
      vsr::classify("The module registers its input and raises a flag when full.")));
  EXPECT_TRUE(std::holds_alternative<vsr::ParseFail>(vsr::classify("module m(; endmodule")));
  EXPECT_TRUE(std::holds_alternative<vsr::Parsed>(vsr::classify("module m; endmodule")));
  // `module` without a later `endmodule` is not code.
  EXPECT_TRUE(std::holds_alternative<vsr::NotCode>(vsr::classify("module m; wire x;")));
  EXPECT_TRUE(std::holds_alternative<vsr::NotCode>(vsr::classify("endmodule module")));
  // Lex failure means not code.
  EXPECT_TRUE(std::holds_alternative<vsr::NotCode>(vsr::classify("module m; \"open endmodule")));
}

TEST(Classify, FailuresCarryDiagnostics) {
  for (const char* src : {"plain prose", "module m(; endmodule", "", "module \x02 endmodule"}) {
    const auto v = vsr::classify(src);
    ASSERT_FALSE(std::holds_alternative<vsr::Parsed>(v));
    EXPECT_GE(vsr::diagnostics_of(v)->size(), 1u) << src;
  }
}

TEST(Classify, GoldenCorpusParses) {
  const auto files = vsr_test::golden_files();
  ASSERT_GE(files.size(), 50u);
  for (const auto& path : files) {
    const auto v = vsr::classify(vsr_test::read_text(path));
    EXPECT_TRUE(std::holds_alternative<vsr::Parsed>(v)) << path;
  }
}

TEST(Classify, Deterministic) {
  const std::string src = vsr_test::read_text(vsr_test::fixture("reorder_left.v"));
  const auto a = vsr::classify(src);
  const auto b = vsr::classify(src);
  EXPECT_EQ(vsr::dump(std::get<vsr::Parsed>(a).ast), vsr::dump(std::get<vsr::Parsed>(b).ast));
}

TEST(Classify, RandomBytesNeverThrow) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 2000; ++i) {
    std::string s(rng() % 64, '\0');
    for (auto& ch : s) ch = static_cast<char>(rng() & 0xFF);
    const auto v = vsr::classify(s);
    EXPECT_LE(v.index(), 2u);
  }
}

}  // namespace
