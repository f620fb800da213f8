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

#include <string>
#include <string_view>
#include <vector>

#include "vsr/error.hpp"
#include "vsr/node_kind.hpp"
#include "vsr/raw_ast.hpp"

namespace vsr {

namespace detail {

// Re-emits Verilog from a RawAst. Output is not byte-identical to the
// original; re-parsing it yields the same tree shape, names and literals.
// Compound subexpressions are always parenthesized.
class Printer {
 public:
  std::string run(const RawNode& root) {
    if (root.kind != NodeKind::SourceUnit) throw Error("printer expects a SourceUnit");
    for (std::size_t i = 0; i < root.children.size(); ++i) {
      if (i > 0) out_ += '\n';
      module(root.children[i]);
    }
    return std::move(out_);
  }

 private:
  void line(int depth, const std::string& text) {
    out_.append(static_cast<std::size_t>(depth) * 2, ' ');
    out_ += text;
    out_ += '\n';
  }

  static const std::string& name_of(const RawNode& n) {
    static const std::string kEmpty;
    return n.name ? *n.name : kEmpty;
  }

  static std::string_view binary_op(NodeKind k) {
    switch (k) {
      case NodeKind::Plus: return "+";
      case NodeKind::Minus: return "-";
      case NodeKind::Times: return "*";
      case NodeKind::Div: return "/";
      case NodeKind::Mod: return "%";
      case NodeKind::Power: return "**";
      case NodeKind::And: return "&";
      case NodeKind::Or: return "|";
      case NodeKind::Xor: return "^";
      case NodeKind::Xnor: return "~^";
      case NodeKind::Shl: return "<<";
      case NodeKind::Shr: return ">>";
      case NodeKind::AShl: return "<<<";
      case NodeKind::AShr: return ">>>";
      case NodeKind::Eq: return "==";
      case NodeKind::Neq: return "!=";
      case NodeKind::CaseEq: return "===";
      case NodeKind::CaseNeq: return "!==";
      case NodeKind::Lt: return "<";
      case NodeKind::Lte: return "<=";
      case NodeKind::Gt: return ">";
      case NodeKind::Gte: return ">=";
      case NodeKind::LogicalAnd: return "&&";
      case NodeKind::LogicalOr: return "||";
      default: return "?";
    }
  }

  static std::string_view unary_op(NodeKind k) {
    switch (k) {
      case NodeKind::Not: return "!";
      case NodeKind::BitNot: return "~";
      case NodeKind::UnaryMinus: return "-";
      case NodeKind::UnaryPlus: return "+";
      case NodeKind::ReduceAnd: return "&";
      case NodeKind::ReduceOr: return "|";
      case NodeKind::ReduceXor: return "^";
      case NodeKind::ReduceNand: return "~&";
      case NodeKind::ReduceNor: return "~|";
      case NodeKind::ReduceXnor: return "~^";
      default: return "?";
    }
  }

  std::string expr(const RawNode& n) const {
    const auto& c = n.children;
    if (is_binary_operator(n.kind)) {
      return "(" + expr(c.at(0)) + " " + std::string(binary_op(n.kind)) + " " + expr(c.at(1)) + ")";
    }
    if (is_unary_operator(n.kind)) {
      return std::string(unary_op(n.kind)) + "(" + expr(c.at(0)) + ")";
    }
    switch (n.kind) {
      case NodeKind::Id: return name_of(n);
      case NodeKind::Const: return n.value ? *n.value : "0";
      case NodeKind::Ternary:
        return "(" + expr(c.at(0)) + " ? " + expr(c.at(1)) + " : " + expr(c.at(2)) + ")";
      case NodeKind::Concat: return "{" + expr_list(c) + "}";
      case NodeKind::Repeat: return "{" + expr(c.at(0)) + expr(c.at(1)) + "}";
      case NodeKind::BitSelect: return expr(c.at(0)) + "[" + expr(c.at(1)) + "]";
      case NodeKind::PartSelect:
        return expr(c.at(0)) + "[" + expr(c.at(1)) + ":" + expr(c.at(2)) + "]";
      case NodeKind::PartSelectUp:
        return expr(c.at(0)) + "[" + expr(c.at(1)) + " +: " + expr(c.at(2)) + "]";
      case NodeKind::PartSelectDown:
        return expr(c.at(0)) + "[" + expr(c.at(1)) + " -: " + expr(c.at(2)) + "]";
      case NodeKind::FuncCall: return name_of(n) + "(" + expr_list(c) + ")";
      default:
        throw Error("printer: unexpected expression kind " + std::string(kind_name(n.kind)));
    }
  }

  std::string expr_list(const std::vector<RawNode>& nodes) const {
    std::string s;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (i > 0) s += ", ";
      s += expr(nodes[i]);
    }
    return s;
  }

  std::string range(const RawNode& r) const {
    return "[" + expr(r.children.at(0)) + ":" + expr(r.children.at(1)) + "]";
  }

  // Type words and ranges shared by ports, nets, params and function returns.
  std::string type_prefix(const RawNode& n) const {
    std::string s;
    for (const auto& c : n.children) {
      switch (c.kind) {
        case NodeKind::WireDecl: if (!c.name) s += " wire"; break;
        case NodeKind::RegDecl: if (!c.name) s += " reg"; break;
        case NodeKind::IntegerDecl: if (!c.name) s += " integer"; break;
        case NodeKind::RealDecl: if (!c.name) s += " real"; break;
        case NodeKind::TimeDecl: if (!c.name) s += " time"; break;
        case NodeKind::Signed: s += " signed"; break;
        case NodeKind::Width: s += " " + range(c); break;
        default: break;
      }
    }
    return s;
  }

  static std::string_view direction(NodeKind k) {
    return k == NodeKind::InputPort ? "input" : k == NodeKind::OutputPort ? "output" : "inout";
  }

  std::string port_text(const RawNode& p) const {
    return std::string(direction(p.kind)) + type_prefix(p) + " " + name_of(p);
  }

  std::string param_text(const RawNode& p) const {
    std::string s = p.kind == NodeKind::ParamDecl ? "parameter" : "localparam";
    s += type_prefix(p) + " " + name_of(p) + " = " + expr(p.children.back());
    return s;
  }

  std::string net_text(const RawNode& d) const {
    static constexpr std::string_view kWords[] = {"wire", "reg", "integer", "real", "time"};
    const auto idx = static_cast<std::size_t>(d.kind) - static_cast<std::size_t>(NodeKind::WireDecl);
    std::string s(kWords[idx]);
    for (const auto& c : d.children) {
      if (c.kind == NodeKind::Signed) s += " signed";
      if (c.kind == NodeKind::Width) s += " " + range(c);
    }
    s += " " + name_of(d);
    for (const auto& c : d.children) {
      if (c.kind == NodeKind::ArrayDim) s += " " + range(c);
    }
    for (const auto& c : d.children) {
      if (is_expression(c.kind)) s += " = " + expr(c);
    }
    return s;
  }

  std::string connections(const RawNode& inst, NodeKind kind) const {
    std::string s;
    bool first = true;
    for (const auto& c : inst.children) {
      if (c.kind != kind) continue;
      if (!first) s += ", ";
      first = false;
      if (c.name) {
        s += "." + *c.name + "(" + (c.children.empty() ? "" : expr(c.children[0])) + ")";
      } else if (!c.children.empty()) {
        s += expr(c.children[0]);
      }
    }
    return s;
  }

  void module(const RawNode& m) {
    std::string head = "module " + name_of(m);
    std::vector<std::string> params;
    std::vector<std::string> ports;
    for (const auto& c : m.children) {
      if (!c.header_item()) continue;
      if (is_param_decl(c.kind)) {
        params.push_back(param_text(c));
      } else if (c.kind == NodeKind::PortRef) {
        ports.push_back(name_of(c));
      } else {
        ports.push_back(port_text(c));
      }
    }
    if (!params.empty()) {
      head += " #(";
      for (std::size_t i = 0; i < params.size(); ++i) head += (i ? ", " : "") + params[i];
      head += ")";
    }
    if (!ports.empty()) {
      head += " (";
      for (std::size_t i = 0; i < ports.size(); ++i) {
        head += (i ? ",\n    " : "\n    ") + ports[i];
      }
      head += "\n)";
    }
    line(0, head + ";");
    for (const auto& c : m.children) {
      if (!c.header_item()) item(c, 1);
    }
    line(0, "endmodule");
  }

  // Module, function, task and named-block items.
  void item(const RawNode& n, int depth) {
    if (is_port_decl(n.kind)) return line(depth, port_text(n) + ";");
    if (is_net_decl(n.kind)) return line(depth, net_text(n) + ";");
    if (is_param_decl(n.kind)) return line(depth, param_text(n) + ";");
    switch (n.kind) {
      case NodeKind::ContinuousAssign:
        return line(depth, "assign " + expr(n.children.at(0)) + " = " + expr(n.children.at(1)) + ";");
      case NodeKind::Always:
      case NodeKind::Initial: {
        std::string head = n.kind == NodeKind::Always ? "always" : "initial";
        std::size_t body = 0;
        if (n.children.at(0).kind == NodeKind::SensList) {
          head += " " + sensitivity(n.children[0]);
          body = 1;
        }
        line(depth, head);
        return statement(n.children.at(body), depth + 1);
      }
      case NodeKind::Instance: {
        std::string s = n.target ? *n.target : "";
        bool has_params = false;
        for (const auto& c : n.children) has_params = has_params || c.kind == NodeKind::ParamOverride;
        if (has_params) s += " #(" + connections(n, NodeKind::ParamOverride) + ")";
        s += " " + name_of(n) + " (" + connections(n, NodeKind::PortConn) + ");";
        return line(depth, s);
      }
      case NodeKind::FuncDecl:
      case NodeKind::TaskDecl: {
        const bool func = n.kind == NodeKind::FuncDecl;
        std::string head = func ? "function" : "task";
        if (func) head += type_prefix(n);
        line(depth, head + " " + name_of(n) + ";");
        for (std::size_t i = 0; i + 1 < n.children.size(); ++i) {
          const auto& c = n.children[i];
          if (c.name) item(c, depth + 1);  // markers carry no name
        }
        statement(n.children.back(), depth + 1);
        return line(depth, func ? "endfunction" : "endtask");
      }
      default:
        throw Error("printer: unexpected module item " + std::string(kind_name(n.kind)));
    }
  }

  std::string sensitivity(const RawNode& s) const {
    if (s.children.size() == 1 && s.children[0].kind == NodeKind::StarSense) return "@(*)";
    std::string out = "@(";
    for (std::size_t i = 0; i < s.children.size(); ++i) {
      const auto& e = s.children[i];
      if (i > 0) out += " or ";
      if (e.kind == NodeKind::EdgePosedge) out += "posedge ";
      if (e.kind == NodeKind::EdgeNegedge) out += "negedge ";
      out += expr(e.children.at(0));
    }
    return out + ")";
  }

  void statement(const RawNode& n, int depth) {
    const auto& c = n.children;
    switch (n.kind) {
      case NodeKind::NullStmt: return line(depth, ";");
      case NodeKind::BlockingAssign:
        return line(depth, expr(c.at(0)) + " = " + expr(c.at(1)) + ";");
      case NodeKind::NonblockingAssign:
        return line(depth, expr(c.at(0)) + " <= " + expr(c.at(1)) + ";");
      case NodeKind::TaskCall:
        return line(depth, name_of(n) + (c.empty() ? "" : "(" + expr_list(c) + ")") + ";");
      case NodeKind::Block: {
        line(depth, n.name ? "begin : " + *n.name : "begin");
        for (const auto& s : c) {
          if (is_net_decl(s.kind) || is_param_decl(s.kind)) {
            item(s, depth + 1);
          } else {
            statement(s, depth + 1);
          }
        }
        return line(depth, "end");
      }
      case NodeKind::IfStmt:
        line(depth, "if (" + expr(c.at(0)) + ")");
        statement(c.at(1), depth + 1);
        if (c.size() > 2) {
          line(depth, "else");
          statement(c[2], depth + 1);
        }
        return;
      case NodeKind::CaseStmt:
      case NodeKind::CasezStmt:
      case NodeKind::CasexStmt: {
        const char* kw = n.kind == NodeKind::CaseStmt ? "case" : n.kind == NodeKind::CasezStmt ? "casez" : "casex";
        line(depth, std::string(kw) + " (" + expr(c.at(0)) + ")");
        for (std::size_t i = 1; i < c.size(); ++i) {
          const auto& it = c[i];
          if (it.kind == NodeKind::DefaultCaseItem) {
            line(depth + 1, "default:");
          } else {
            std::string labels;
            for (std::size_t j = 0; j + 1 < it.children.size(); ++j) {
              labels += (j ? ", " : "") + expr(it.children[j]);
            }
            line(depth + 1, labels + ":");
          }
          statement(it.children.back(), depth + 2);
        }
        return line(depth, "endcase");
      }
      case NodeKind::ForStmt: {
        auto assign = [&](const RawNode& a) {
          return expr(a.children.at(0)) + " = " + expr(a.children.at(1));
        };
        line(depth, "for (" + assign(c.at(0)) + "; " + expr(c.at(1)) + "; " + assign(c.at(2)) + ")");
        return statement(c.at(3), depth + 1);
      }
      default:
        throw Error("printer: unexpected statement " + std::string(kind_name(n.kind)));
    }
  }

  std::string out_;
};

}  // namespace detail

/// Pretty-prints a parsed source unit back to Verilog.
inline std::string print_verilog(const RawAst& ast) { return detail::Printer().run(ast.root); }

}  // namespace vsr
