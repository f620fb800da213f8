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
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vsr/error.hpp"
#include "vsr/node_kind.hpp"
#include "vsr/raw_ast.hpp"

namespace vsr {

/// Cleaned AST node: structure only. Identifiers and literals survive as
/// childless Id / Const leaves.
struct CleanNode {
  NodeKind kind = NodeKind::SourceUnit;
  std::vector<CleanNode> children;

  CleanNode() = default;
  explicit CleanNode(NodeKind k, std::vector<CleanNode> c = {})
      : kind(k), children(std::move(c)) {}

  bool is_leaf() const { return children.empty(); }
  friend bool operator==(const CleanNode&, const CleanNode&) = default;
};

struct TreeStats {
  std::size_t depth = 0;
  std::size_t node_count = 0;
  /// Mean child count over internal nodes; 0 when the tree is a single leaf.
  double mean_branching = 0.0;
};

inline CleanNode clean(const RawNode& raw) {
  CleanNode out(raw.kind);
  if (raw.kind == NodeKind::Id || raw.kind == NodeKind::Const) return out;
  out.children.reserve(raw.children.size());
  for (const auto& c : raw.children) out.children.push_back(clean(c));
  return out;
}

/// Drops names and literal values, keeping node kinds and child order.
inline CleanNode clean(const RawAst& ast) { return clean(ast.root); }

namespace detail {

inline void serialize_into(const CleanNode& t, std::string& out) {
  out += '(';
  out += kind_name(t.kind);
  for (const auto& c : t.children) {
    out += ' ';
    serialize_into(c, out);
  }
  out += ')';
}

}  // namespace detail

/// Canonical `(Kind child child ...)` form; equal trees give equal text.
inline std::string serialize(const CleanNode& t) {
  std::string out;
  detail::serialize_into(t, out);
  return out;
}

inline constexpr std::size_t kMaxSerializedDepth = 4096;

/// Inverse of serialize. Whitespace between tokens is tolerated; anything
/// else unexpected is a FormatError.
inline CleanNode deserialize(std::string_view text) {
  std::vector<CleanNode> stack;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() &&
           (text[i] == ' ' || text[i] == '\n' || text[i] == '\t' || text[i] == '\r')) {
      ++i;
    }
  };
  auto err = [&](const std::string& msg) {
    return FormatError(msg + " at offset " + std::to_string(i));
  };

  skip_ws();
  bool done = false;
  CleanNode result;
  while (!done) {
    if (i >= text.size()) throw err("unbalanced parentheses");
    if (text[i] == '(') {
      ++i;
      skip_ws();
      const std::size_t start = i;
      while (i < text.size() && text[i] != '(' && text[i] != ')' && text[i] != ' ' &&
             text[i] != '\n' && text[i] != '\t' && text[i] != '\r') {
        ++i;
      }
      const std::string_view name = text.substr(start, i - start);
      const auto kind = kind_from_name(name);
      if (!kind) throw FormatError("unknown node kind '" + std::string(name) + "'");
      if (stack.size() >= kMaxSerializedDepth) throw err("tree too deep");
      stack.emplace_back(*kind);
    } else if (text[i] == ')') {
      if (stack.empty()) throw err("unbalanced parentheses");
      ++i;
      CleanNode done_node = std::move(stack.back());
      stack.pop_back();
      if (stack.empty()) {
        result = std::move(done_node);
        done = true;
      } else {
        stack.back().children.push_back(std::move(done_node));
      }
    } else if (stack.empty()) {
      throw err("expected '('");
    } else {
      throw err("unexpected character");
    }
    skip_ws();
  }
  if (i != text.size()) throw err("trailing characters");
  return result;
}

/// Depth in levels (a single node has depth 1). Iterative, so it is safe on
/// trees deeper than the similarity recursion limit.
inline std::size_t tree_depth(const CleanNode& t) {
  std::size_t best = 0;
  std::vector<std::pair<const CleanNode*, std::size_t>> todo{{&t, 1}};
  while (!todo.empty()) {
    auto [n, d] = todo.back();
    todo.pop_back();
    best = std::max(best, d);
    for (const auto& c : n->children) todo.emplace_back(&c, d + 1);
  }
  return best;
}

inline TreeStats stats(const CleanNode& t) {
  TreeStats s;
  std::size_t internal = 0;
  std::vector<std::pair<const CleanNode*, std::size_t>> todo{{&t, 1}};
  while (!todo.empty()) {
    auto [n, d] = todo.back();
    todo.pop_back();
    ++s.node_count;
    s.depth = std::max(s.depth, d);
    if (!n->children.empty()) ++internal;
    for (const auto& c : n->children) todo.emplace_back(&c, d + 1);
  }
  if (internal > 0) {
    s.mean_branching = static_cast<double>(s.node_count - 1) / static_cast<double>(internal);
  }
  return s;
}

}  // namespace vsr
