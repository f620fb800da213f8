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

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vsr/error.hpp"
#include "vsr/lexer.hpp"
#include "vsr/node_kind.hpp"
#include "vsr/raw_ast.hpp"

namespace vsr {

namespace detail {

// Recursive-descent parser for the synthesizable Verilog-2005 subset. The
// first error aborts; there is no recovery.
class Parser {
 public:
  static constexpr int kMaxNesting = 256;

  explicit Parser(std::span<const Token> tokens) {
    toks_.reserve(tokens.size());
    for (const auto& t : tokens) {
      if (t.kind != TokenKind::Directive) toks_.push_back(&t);
    }
  }

  RawAst parse_source() {
    RawNode root;
    root.kind = NodeKind::SourceUnit;
    while (!eof()) {
      if (!cur().is_keyword("module")) fail("expected 'module'");
      root.children.push_back(module_def());
    }
    if (!root.children.empty()) {
      root.span = {root.children.front().span.start, root.children.back().span.end};
    }
    return RawAst{std::move(root)};
  }

 private:
  // ---- token cursor -------------------------------------------------------

  bool eof() const { return pos_ >= toks_.size(); }

  const Token& cur() const {
    if (eof()) fail_eof();
    return *toks_[pos_];
  }

  bool peek_is(std::size_t ahead, std::string_view text) const {
    return pos_ + ahead < toks_.size() && toks_[pos_ + ahead]->text == text &&
           toks_[pos_ + ahead]->kind != TokenKind::String;
  }

  bool at_op(std::string_view t) const { return !eof() && toks_[pos_]->is_op(t); }
  bool at_kw(std::string_view t) const { return !eof() && toks_[pos_]->is_keyword(t); }
  bool at_ident() const { return !eof() && toks_[pos_]->kind == TokenKind::Identifier; }

  const Token& take() {
    const Token& t = cur();
    ++pos_;
    last_end_ = t.span.end;
    return t;
  }

  bool accept_op(std::string_view t) {
    if (!at_op(t)) return false;
    take();
    return true;
  }
  bool accept_kw(std::string_view t) {
    if (!at_kw(t)) return false;
    take();
    return true;
  }

  const Token& expect_op(std::string_view t) {
    if (!at_op(t)) fail("expected '" + std::string(t) + "'");
    return take();
  }
  const Token& expect_kw(std::string_view t) {
    if (!at_kw(t)) fail("expected '" + std::string(t) + "'");
    return take();
  }
  const Token& expect_ident() {
    if (!at_ident()) fail("expected identifier");
    return take();
  }

  std::size_t here() const { return eof() ? last_end_ : toks_[pos_]->span.start; }

  [[noreturn]] void fail_eof() const {
    throw ParseError("unexpected end of input", Span{last_end_, last_end_});
  }

  [[noreturn]] void fail(const std::string& msg) const {
    if (eof()) fail_eof();
    const Token& t = *toks_[pos_];
    throw ParseError(msg + ", found '" + t.text + "'", t.span);
  }

  struct DepthGuard {
    explicit DepthGuard(Parser& p) : p_(p) {
      if (++p_.depth_ > kMaxNesting) p_.fail("nesting too deep");
    }
    ~DepthGuard() { --p_.depth_; }
    DepthGuard(const DepthGuard&) = delete;
    DepthGuard& operator=(const DepthGuard&) = delete;
    Parser& p_;
  };

  static RawNode node(NodeKind k, std::size_t start, std::size_t end) {
    RawNode n;
    n.kind = k;
    n.span = {start, end};
    return n;
  }

  RawNode finish(RawNode n, std::size_t start) const {
    n.span = {start, last_end_};
    return n;
  }

  // ---- module structure ---------------------------------------------------

  RawNode module_def() {
    const std::size_t start = take().span.start;  // 'module'
    RawNode mod = node(NodeKind::ModuleDef, start, start);
    mod.name = expect_ident().text;

    if (accept_op("#")) {
      expect_op("(");
      if (!at_op(")")) {
        do {
          for (auto& p : param_assignments(/*in_header=*/true)) {
            p.flags |= RawNode::kHeaderItem;
            mod.children.push_back(std::move(p));
          }
        } while (accept_op(","));
      }
      expect_op(")");
    }

    if (accept_op("(")) {
      if (at_op(")")) {
        // empty port list
      } else if (at_kw("input") || at_kw("output") || at_kw("inout")) {
        for (auto& p : ansi_ports()) {
          p.flags |= RawNode::kHeaderItem;
          mod.children.push_back(std::move(p));
        }
      } else {
        do {
          const Token& id = expect_ident();
          RawNode ref = node(NodeKind::PortRef, id.span.start, id.span.end);
          ref.name = id.text;
          ref.flags |= RawNode::kHeaderItem;
          mod.children.push_back(std::move(ref));
        } while (accept_op(","));
      }
      expect_op(")");
    }
    expect_op(";");

    while (!at_kw("endmodule")) {
      module_item(mod.children);
    }
    take();
    return finish(std::move(mod), start);
  }

  static NodeKind direction_kind(std::string_view kw) {
    if (kw == "input") return NodeKind::InputPort;
    if (kw == "output") return NodeKind::OutputPort;
    return NodeKind::InoutPort;
  }

  // Port type prefix shared by a run of names: [wire|reg] [signed] [range].
  std::vector<RawNode> port_type_prefix() {
    std::vector<RawNode> prefix;
    if (at_kw("wire") || at_kw("reg")) {
      const Token& t = take();
      prefix.push_back(node(t.text == "reg" ? NodeKind::RegDecl : NodeKind::WireDecl,
                            t.span.start, t.span.end));
    }
    if (at_kw("signed")) {
      const Token& t = take();
      prefix.push_back(node(NodeKind::Signed, t.span.start, t.span.end));
    }
    if (at_op("[")) prefix.push_back(range(NodeKind::Width));
    return prefix;
  }

  // ANSI header: `input [7:0] a, b, output reg c`.
  std::vector<RawNode> ansi_ports() {
    std::vector<RawNode> out;
    NodeKind dir = NodeKind::InputPort;
    std::vector<RawNode> prefix;
    std::size_t group_start = here();
    do {
      if (at_kw("input") || at_kw("output") || at_kw("inout")) {
        const Token& t = take();
        group_start = t.span.start;
        dir = direction_kind(t.text);
        prefix = port_type_prefix();
      } else if (out.empty()) {
        fail("expected port direction");
      }
      const Token& id = expect_ident();
      RawNode p = node(dir, group_start, id.span.end);
      p.name = id.text;
      p.children = prefix;
      out.push_back(std::move(p));
    } while (accept_op(","));
    return out;
  }

  // Body or function/task port declaration: `output reg [3:0] q, r;`
  void port_declaration(std::vector<RawNode>& out) {
    const Token& t = take();
    const std::size_t start = t.span.start;
    const NodeKind dir = direction_kind(t.text);
    std::vector<RawNode> prefix = port_type_prefix();
    do {
      const Token& id = expect_ident();
      RawNode p = node(dir, start, id.span.end);
      p.name = id.text;
      p.children = prefix;
      out.push_back(std::move(p));
    } while (accept_op(","));
    expect_op(";");
  }

  static NodeKind net_kind(std::string_view kw) {
    if (kw == "wire") return NodeKind::WireDecl;
    if (kw == "reg") return NodeKind::RegDecl;
    if (kw == "integer") return NodeKind::IntegerDecl;
    if (kw == "real") return NodeKind::RealDecl;
    return NodeKind::TimeDecl;
  }

  bool at_net_keyword() const {
    return at_kw("wire") || at_kw("reg") || at_kw("integer") || at_kw("real") || at_kw("time");
  }

  // `reg signed [7:0] mem [0:15], r = 0;`
  void net_declaration(std::vector<RawNode>& out) {
    const Token& t = take();
    const std::size_t start = t.span.start;
    const NodeKind kind = net_kind(t.text);
    std::vector<RawNode> prefix;
    if (kind == NodeKind::WireDecl || kind == NodeKind::RegDecl) {
      if (at_kw("signed")) {
        const Token& s = take();
        prefix.push_back(node(NodeKind::Signed, s.span.start, s.span.end));
      }
      if (at_op("[")) prefix.push_back(range(NodeKind::Width));
    }
    do {
      const Token& id = expect_ident();
      RawNode d = node(kind, start, id.span.end);
      d.name = id.text;
      d.children = prefix;
      while (at_op("[")) d.children.push_back(range(NodeKind::ArrayDim));
      if (accept_op("=")) d.children.push_back(expression());
      out.push_back(finish(std::move(d), start));
    } while (accept_op(","));
    expect_op(";");
  }

  // `parameter [signed] [range|integer|real] A = 1, B = 2` without the
  // trailing ';'. In a header, a leading `parameter` keyword is optional
  // after the first entry.
  std::vector<RawNode> param_assignments(bool in_header) {
    std::vector<RawNode> out;
    NodeKind kind = NodeKind::ParamDecl;
    const std::size_t start = here();
    if (at_kw("parameter") || at_kw("localparam")) {
      kind = take().text == "parameter" ? NodeKind::ParamDecl : NodeKind::LocalparamDecl;
    } else if (!in_header) {
      fail("expected 'parameter'");
    }
    std::vector<RawNode> prefix;
    if (at_kw("signed")) {
      const Token& s = take();
      prefix.push_back(node(NodeKind::Signed, s.span.start, s.span.end));
    }
    if (at_kw("integer") || at_kw("real") || at_kw("time")) {
      const Token& s = take();
      prefix.push_back(node(net_kind(s.text), s.span.start, s.span.end));
    } else if (at_op("[")) {
      prefix.push_back(range(NodeKind::Width));
    }
    while (true) {
      const Token& id = expect_ident();
      RawNode p = node(kind, start, id.span.end);
      p.name = id.text;
      p.children = prefix;
      expect_op("=");
      p.children.push_back(expression());
      out.push_back(finish(std::move(p), start));
      // In a header, `, parameter X = ...` and `, X = ...` both continue.
      if (!(at_op(",") && pos_ + 1 < toks_.size() &&
            toks_[pos_ + 1]->kind == TokenKind::Identifier && peek_is(2, "="))) {
        break;
      }
      take();
    }
    return out;
  }

  RawNode range(NodeKind kind) {
    const std::size_t start = expect_op("[").span.start;
    RawNode r = node(kind, start, start);
    r.children.push_back(expression());
    expect_op(":");
    r.children.push_back(expression());
    expect_op("]");
    return finish(std::move(r), start);
  }

  void module_item(std::vector<RawNode>& out) {
    if (eof()) fail_eof();
    const Token& t = cur();
    if (t.kind == TokenKind::Keyword) {
      const std::string& kw = t.text;
      if (kw == "input" || kw == "output" || kw == "inout") return port_declaration(out);
      if (at_net_keyword()) return net_declaration(out);
      if (kw == "parameter" || kw == "localparam") {
        for (auto& p : param_assignments(false)) out.push_back(std::move(p));
        expect_op(";");
        return;
      }
      if (kw == "assign") return continuous_assign(out);
      if (kw == "always" || kw == "initial") {
        const std::size_t start = take().span.start;
        RawNode n = node(kw == "always" ? NodeKind::Always : NodeKind::Initial, start, start);
        if (at_op("@")) n.children.push_back(sensitivity());
        n.children.push_back(statement());
        out.push_back(finish(std::move(n), start));
        return;
      }
      if (kw == "function") return out.push_back(function_decl());
      if (kw == "task") return out.push_back(task_decl());
      fail("unsupported module item");
    }
    if (t.kind == TokenKind::Identifier) return instantiation(out);
    fail("expected module item");
  }

  void continuous_assign(std::vector<RawNode>& out) {
    const std::size_t start = take().span.start;
    do {
      RawNode a = node(NodeKind::ContinuousAssign, start, start);
      a.children.push_back(lvalue());
      expect_op("=");
      a.children.push_back(expression());
      out.push_back(finish(std::move(a), start));
    } while (accept_op(","));
    expect_op(";");
  }

  RawNode sensitivity() {
    const std::size_t start = expect_op("@").span.start;
    RawNode s = node(NodeKind::SensList, start, start);
    if (at_op("*")) {
      const Token& t = take();
      s.children.push_back(node(NodeKind::StarSense, t.span.start, t.span.end));
      return finish(std::move(s), start);
    }
    expect_op("(");
    if (at_op("*")) {
      const Token& t = take();
      s.children.push_back(node(NodeKind::StarSense, t.span.start, t.span.end));
    } else {
      do {
        const std::size_t estart = here();
        NodeKind k = NodeKind::LevelSense;
        if (accept_kw("posedge")) {
          k = NodeKind::EdgePosedge;
        } else if (accept_kw("negedge")) {
          k = NodeKind::EdgeNegedge;
        }
        RawNode e = node(k, estart, estart);
        e.children.push_back(expression());
        s.children.push_back(finish(std::move(e), estart));
      } while (accept_kw("or") || accept_op(","));
    }
    expect_op(")");
    return finish(std::move(s), start);
  }

  // `type #(.P(1)) u0 (.a(x), .b(y)), u1 (...);`
  void instantiation(std::vector<RawNode>& out) {
    const Token& type = take();
    const std::size_t start = type.span.start;
    std::vector<RawNode> overrides;
    if (accept_op("#")) {
      expect_op("(");
      overrides = connections(NodeKind::ParamOverride);
      expect_op(")");
    }
    do {
      const Token& inst = expect_ident();
      RawNode n = node(NodeKind::Instance, start, inst.span.end);
      n.name = inst.text;
      n.target = type.text;
      n.children = overrides;
      expect_op("(");
      for (auto& c : connections(NodeKind::PortConn)) n.children.push_back(std::move(c));
      expect_op(")");
      out.push_back(finish(std::move(n), start));
    } while (accept_op(","));
    expect_op(";");
  }

  // Named (`.a(x)`) or positional (`x`) connection list; blank positional
  // entries and empty named ones yield a childless node.
  std::vector<RawNode> connections(NodeKind kind) {
    std::vector<RawNode> out;
    if (at_op(")")) return out;
    do {
      const std::size_t start = here();
      RawNode c = node(kind, start, start);
      if (accept_op(".")) {
        c.name = expect_ident().text;
        expect_op("(");
        if (!at_op(")")) c.children.push_back(expression());
        expect_op(")");
        out.push_back(finish(std::move(c), start));
      } else if (at_op(",") || at_op(")")) {
        out.push_back(std::move(c));
      } else {
        c.children.push_back(expression());
        out.push_back(finish(std::move(c), start));
      }
    } while (accept_op(","));
    return out;
  }

  // Declarations allowed inside functions, tasks and named blocks.
  bool local_item(std::vector<RawNode>& out, bool allow_ports) {
    if (allow_ports && (at_kw("input") || at_kw("output") || at_kw("inout"))) {
      port_declaration(out);
      return true;
    }
    if (at_kw("reg") || at_kw("integer") || at_kw("real") || at_kw("time")) {
      net_declaration(out);
      return true;
    }
    if (at_kw("parameter") || at_kw("localparam")) {
      for (auto& p : param_assignments(false)) out.push_back(std::move(p));
      expect_op(";");
      return true;
    }
    return false;
  }

  // `(input [7:0] a, input b)` on a function or task.
  void ansi_subroutine_ports(std::vector<RawNode>& out) {
    expect_op("(");
    if (!at_op(")")) {
      for (auto& p : ansi_ports()) out.push_back(std::move(p));
    }
    expect_op(")");
  }

  RawNode function_decl() {
    const std::size_t start = take().span.start;
    RawNode f = node(NodeKind::FuncDecl, start, start);
    accept_kw("automatic");
    if (at_kw("signed")) {
      const Token& s = take();
      f.children.push_back(node(NodeKind::Signed, s.span.start, s.span.end));
    }
    if (at_kw("integer") || at_kw("real") || at_kw("time")) {
      const Token& s = take();
      f.children.push_back(node(net_kind(s.text), s.span.start, s.span.end));
    } else if (at_op("[")) {
      f.children.push_back(range(NodeKind::Width));
    }
    f.name = expect_ident().text;
    if (at_op("(")) ansi_subroutine_ports(f.children);
    expect_op(";");
    while (local_item(f.children, true)) {
    }
    f.children.push_back(statement());
    expect_kw("endfunction");
    return finish(std::move(f), start);
  }

  RawNode task_decl() {
    const std::size_t start = take().span.start;
    RawNode t = node(NodeKind::TaskDecl, start, start);
    accept_kw("automatic");
    t.name = expect_ident().text;
    if (at_op("(")) ansi_subroutine_ports(t.children);
    expect_op(";");
    while (local_item(t.children, true)) {
    }
    t.children.push_back(statement());
    expect_kw("endtask");
    return finish(std::move(t), start);
  }

  // ---- statements ---------------------------------------------------------

  RawNode statement() {
    DepthGuard guard(*this);
    if (eof()) fail_eof();
    const std::size_t start = here();

    if (accept_op(";")) return node(NodeKind::NullStmt, start, last_end_);

    if (accept_kw("begin")) {
      RawNode b = node(NodeKind::Block, start, start);
      if (accept_op(":")) {
        b.name = expect_ident().text;
        while (local_item(b.children, false)) {
        }
      }
      while (!at_kw("end")) b.children.push_back(statement());
      take();
      return finish(std::move(b), start);
    }

    if (accept_kw("if")) {
      RawNode n = node(NodeKind::IfStmt, start, start);
      expect_op("(");
      n.children.push_back(expression());
      expect_op(")");
      n.children.push_back(statement());
      if (accept_kw("else")) n.children.push_back(statement());
      return finish(std::move(n), start);
    }

    if (at_kw("case") || at_kw("casez") || at_kw("casex")) {
      const std::string& kw = take().text;
      const NodeKind kind = kw == "case"    ? NodeKind::CaseStmt
                            : kw == "casez" ? NodeKind::CasezStmt
                                            : NodeKind::CasexStmt;
      RawNode n = node(kind, start, start);
      expect_op("(");
      n.children.push_back(expression());
      expect_op(")");
      while (!at_kw("endcase")) n.children.push_back(case_item());
      take();
      return finish(std::move(n), start);
    }

    if (accept_kw("for")) {
      RawNode n = node(NodeKind::ForStmt, start, start);
      expect_op("(");
      n.children.push_back(blocking_assignment());
      expect_op(";");
      n.children.push_back(expression());
      expect_op(";");
      n.children.push_back(blocking_assignment());
      expect_op(")");
      n.children.push_back(statement());
      return finish(std::move(n), start);
    }

    if (at_ident() && (peek_is(1, "(") || peek_is(1, ";"))) {
      const Token& id = take();
      RawNode call = node(NodeKind::TaskCall, start, start);
      call.name = id.text;
      if (accept_op("(")) {
        if (!at_op(")")) {
          do {
            call.children.push_back(expression());
          } while (accept_op(","));
        }
        expect_op(")");
      }
      expect_op(";");
      return finish(std::move(call), start);
    }

    if (at_ident() || at_op("{")) {
      RawNode target = lvalue();
      NodeKind kind;
      if (accept_op("=")) {
        kind = NodeKind::BlockingAssign;
      } else if (accept_op("<=")) {
        kind = NodeKind::NonblockingAssign;
      } else {
        fail("expected '=' or '<='");
      }
      RawNode a = node(kind, start, start);
      a.children.push_back(std::move(target));
      a.children.push_back(expression());
      expect_op(";");
      return finish(std::move(a), start);
    }

    fail("expected statement");
  }

  RawNode blocking_assignment() {
    const std::size_t start = here();
    RawNode a = node(NodeKind::BlockingAssign, start, start);
    a.children.push_back(lvalue());
    expect_op("=");
    a.children.push_back(expression());
    return finish(std::move(a), start);
  }

  RawNode case_item() {
    const std::size_t start = here();
    if (accept_kw("default")) {
      RawNode d = node(NodeKind::DefaultCaseItem, start, start);
      accept_op(":");
      d.children.push_back(statement());
      return finish(std::move(d), start);
    }
    RawNode item = node(NodeKind::CaseItem, start, start);
    do {
      item.children.push_back(expression());
    } while (accept_op(","));
    expect_op(":");
    item.children.push_back(statement());
    return finish(std::move(item), start);
  }

  // Assignment target: identifier with selects, or a concatenation of them.
  RawNode lvalue() {
    DepthGuard guard(*this);
    const std::size_t start = here();
    if (accept_op("{")) {
      RawNode c = node(NodeKind::Concat, start, start);
      do {
        c.children.push_back(lvalue());
      } while (accept_op(","));
      expect_op("}");
      return finish(std::move(c), start);
    }
    const Token& id = expect_ident();
    RawNode n = node(NodeKind::Id, id.span.start, id.span.end);
    n.name = hierarchical_tail(id.text);
    return selects(std::move(n), start);
  }

  // ---- expressions --------------------------------------------------------

  RawNode expression() {
    DepthGuard guard(*this);
    const std::size_t start = here();
    RawNode cond = binary(0);
    if (!accept_op("?")) return cond;
    RawNode t = node(NodeKind::Ternary, start, start);
    t.children.push_back(std::move(cond));
    t.children.push_back(expression());
    expect_op(":");
    t.children.push_back(expression());
    return finish(std::move(t), start);
  }

  // Binary operator levels, loosest first.
  static int binary_level(const Token& t, NodeKind& kind) {
    if (t.kind != TokenKind::Operator) return -1;
    static constexpr std::pair<std::string_view, std::pair<int, NodeKind>> kTable[] = {
        {"||", {0, NodeKind::LogicalOr}}, {"&&", {1, NodeKind::LogicalAnd}},
        {"|", {2, NodeKind::Or}},         {"^", {3, NodeKind::Xor}},
        {"~^", {3, NodeKind::Xnor}},      {"^~", {3, NodeKind::Xnor}},
        {"&", {4, NodeKind::And}},        {"==", {5, NodeKind::Eq}},
        {"!=", {5, NodeKind::Neq}},       {"===", {5, NodeKind::CaseEq}},
        {"!==", {5, NodeKind::CaseNeq}},  {"<", {6, NodeKind::Lt}},
        {"<=", {6, NodeKind::Lte}},       {">", {6, NodeKind::Gt}},
        {">=", {6, NodeKind::Gte}},       {"<<", {7, NodeKind::Shl}},
        {">>", {7, NodeKind::Shr}},       {"<<<", {7, NodeKind::AShl}},
        {">>>", {7, NodeKind::AShr}},     {"+", {8, NodeKind::Plus}},
        {"-", {8, NodeKind::Minus}},      {"*", {9, NodeKind::Times}},
        {"/", {9, NodeKind::Div}},        {"%", {9, NodeKind::Mod}},
        {"**", {10, NodeKind::Power}},
    };
    for (const auto& [text, entry] : kTable) {
      if (t.text == text) {
        kind = entry.second;
        return entry.first;
      }
    }
    return -1;
  }

  RawNode binary(int min_level) {
    const std::size_t start = here();
    RawNode lhs = unary();
    while (!eof()) {
      NodeKind kind{};
      const int level = binary_level(cur(), kind);
      if (level < min_level) break;
      take();
      RawNode rhs = binary(level + 1);
      RawNode n = node(kind, start, start);
      n.children.push_back(std::move(lhs));
      n.children.push_back(std::move(rhs));
      lhs = finish(std::move(n), start);
    }
    return lhs;
  }

  RawNode unary() {
    DepthGuard guard(*this);
    const std::size_t start = here();
    if (!eof() && cur().kind == TokenKind::Operator) {
      static constexpr std::pair<std::string_view, NodeKind> kUnary[] = {
          {"!", NodeKind::Not},         {"~", NodeKind::BitNot},
          {"-", NodeKind::UnaryMinus},  {"+", NodeKind::UnaryPlus},
          {"&", NodeKind::ReduceAnd},   {"|", NodeKind::ReduceOr},
          {"^", NodeKind::ReduceXor},   {"~&", NodeKind::ReduceNand},
          {"~|", NodeKind::ReduceNor},  {"~^", NodeKind::ReduceXnor},
          {"^~", NodeKind::ReduceXnor},
      };
      for (const auto& [text, kind] : kUnary) {
        if (cur().text == text) {
          take();
          RawNode n = node(kind, start, start);
          n.children.push_back(unary());
          return finish(std::move(n), start);
        }
      }
    }
    return primary();
  }

  std::string hierarchical_tail(std::string name) {
    while (at_op(".") && pos_ + 1 < toks_.size() &&
           toks_[pos_ + 1]->kind == TokenKind::Identifier) {
      take();
      name += "." + take().text;
    }
    return name;
  }

  RawNode primary() {
    if (eof()) fail_eof();
    const std::size_t start = here();
    const Token& t = cur();

    if (t.kind == TokenKind::Number || t.kind == TokenKind::String) {
      take();
      RawNode c = node(NodeKind::Const, t.span.start, t.span.end);
      c.value = t.text;
      return c;
    }

    if (t.kind == TokenKind::Identifier) {
      take();
      if (at_op("(")) {
        RawNode call = node(NodeKind::FuncCall, start, start);
        call.name = t.text;
        take();
        if (!at_op(")")) {
          do {
            call.children.push_back(expression());
          } while (accept_op(","));
        }
        expect_op(")");
        return finish(std::move(call), start);
      }
      RawNode id = node(NodeKind::Id, t.span.start, t.span.end);
      id.name = hierarchical_tail(t.text);
      id.span.end = last_end_;
      return selects(std::move(id), start);
    }

    if (accept_op("(")) {
      RawNode inner = expression();
      expect_op(")");
      return inner;
    }

    if (accept_op("{")) {
      RawNode first = expression();
      if (at_op("{")) {
        // Replication: {count{a, b}}
        const std::size_t inner_start = take().span.start;
        RawNode inner = node(NodeKind::Concat, inner_start, inner_start);
        do {
          inner.children.push_back(expression());
        } while (accept_op(","));
        expect_op("}");
        inner = finish(std::move(inner), inner_start);
        expect_op("}");
        RawNode rep = node(NodeKind::Repeat, start, start);
        rep.children.push_back(std::move(first));
        rep.children.push_back(std::move(inner));
        return finish(std::move(rep), start);
      }
      RawNode c = node(NodeKind::Concat, start, start);
      c.children.push_back(std::move(first));
      while (accept_op(",")) c.children.push_back(expression());
      expect_op("}");
      return finish(std::move(c), start);
    }

    fail("expected expression");
  }

  RawNode selects(RawNode base, std::size_t start) {
    while (at_op("[")) {
      take();
      RawNode first = expression();
      NodeKind kind = NodeKind::BitSelect;
      RawNode second;
      bool has_second = true;
      if (accept_op(":")) {
        kind = NodeKind::PartSelect;
      } else if (accept_op("+:")) {
        kind = NodeKind::PartSelectUp;
      } else if (accept_op("-:")) {
        kind = NodeKind::PartSelectDown;
      } else {
        has_second = false;
      }
      if (has_second) second = expression();
      expect_op("]");
      RawNode sel = node(kind, start, start);
      sel.children.push_back(std::move(base));
      sel.children.push_back(std::move(first));
      if (has_second) sel.children.push_back(std::move(second));
      base = finish(std::move(sel), start);
    }
    return base;
  }

  std::vector<const Token*> toks_;
  std::size_t pos_ = 0;
  std::size_t last_end_ = 0;
  int depth_ = 0;
};

}  // namespace detail

/// Parses a lexed token stream (directives are skipped). Throws ParseError
/// at the first offending token.
inline RawAst parse(std::span<const Token> tokens) {
  return detail::Parser(tokens).parse_source();
}

/// Convenience: lex + parse. Throws LexError or ParseError.
inline RawAst parse_source(std::string_view source) {
  const std::vector<Token> tokens = lex(source);
  return parse(tokens);
}

}  // namespace vsr
