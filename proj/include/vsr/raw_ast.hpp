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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vsr/error.hpp"
#include "vsr/node_kind.hpp"

namespace vsr {

/// One node of the full parse tree. Names and literal text are kept here and
/// only here; the cleaned tree drops them.
struct RawNode {
  /// The node came from the module header (`#(...)` or the port list), not
  /// the module body.
  static constexpr std::uint8_t kHeaderItem = 1;

  NodeKind kind = NodeKind::SourceUnit;
  std::optional<std::string> name;    // declared or referenced identifier
  std::optional<std::string> value;   // literal text of a Const
  std::optional<std::string> target;  // module type of an Instance
  std::uint8_t flags = 0;
  std::vector<RawNode> children;
  Span span;

  bool header_item() const { return (flags & kHeaderItem) != 0; }
};

struct RawAst {
  RawNode root;
};

namespace detail {

inline void dump_raw(const RawNode& n, int indent, std::string& out) {
  out.append(static_cast<std::size_t>(indent) * 2, ' ');
  out += kind_name(n.kind);
  if (n.target) out += " target=" + *n.target;
  if (n.name) out += " name=" + *n.name;
  if (n.value) out += " value=" + *n.value;
  if (n.header_item()) out += " header";
  out += " [" + std::to_string(n.span.start) + "," + std::to_string(n.span.end) + ")\n";
  for (const auto& c : n.children) dump_raw(c, indent + 1, out);
}

}  // namespace detail

/// Indented one-node-per-line listing, used by `vsr parse --emit ast`.
inline std::string dump(const RawAst& ast) {
  std::string out;
  detail::dump_raw(ast.root, 0, out);
  return out;
}

}  // namespace vsr
