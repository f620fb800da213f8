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

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "vsr/error.hpp"
#include "vsr/frontend.hpp"
#include "vsr/lexer.hpp"
#include "vsr/printer.hpp"
#include "vsr/raw_ast.hpp"

namespace vsr {

enum class MutationKind { ReorderTopItems, RenameIdentifiers, RewriteConstants };

inline std::string_view to_string(MutationKind k) {
  switch (k) {
    case MutationKind::ReorderTopItems: return "reorder";
    case MutationKind::RenameIdentifiers: return "rename";
    case MutationKind::RewriteConstants: return "constants";
  }
  return "?";
}

inline std::optional<MutationKind> mutation_kind_from_string(std::string_view s) {
  if (s == "reorder") return MutationKind::ReorderTopItems;
  if (s == "rename") return MutationKind::RenameIdentifiers;
  if (s == "constants") return MutationKind::RewriteConstants;
  return std::nullopt;
}

struct MutationSpec {
  MutationKind kind = MutationKind::ReorderTopItems;
  std::uint64_t seed = 0;
};

namespace detail {

// Uniform draw in [0, bound) that does not depend on the standard library's
// distribution implementations, so seeded output is portable.
inline std::size_t draw(std::mt19937_64& rng, std::size_t bound) {
  return static_cast<std::size_t>(rng() % bound);
}

inline std::vector<std::size_t> body_item_indices(const RawNode& module) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < module.children.size(); ++i) {
    if (!module.children[i].header_item()) idx.push_back(i);
  }
  return idx;
}

inline void collect_names(const RawNode& n, std::set<std::string>& out) {
  if (n.name) out.insert(*n.name);
  if (n.target) out.insert(*n.target);
  for (const auto& c : n.children) collect_names(c, out);
}

// Identifiers declared inside one module: ports, nets, parameters,
// functions, tasks, named blocks and instance names.
inline void collect_declared(const RawNode& n, std::set<std::string>& out) {
  switch (n.kind) {
    case NodeKind::PortRef:
    case NodeKind::InputPort:
    case NodeKind::OutputPort:
    case NodeKind::InoutPort:
    case NodeKind::ParamDecl:
    case NodeKind::LocalparamDecl:
    case NodeKind::WireDecl:
    case NodeKind::RegDecl:
    case NodeKind::IntegerDecl:
    case NodeKind::RealDecl:
    case NodeKind::TimeDecl:
    case NodeKind::FuncDecl:
    case NodeKind::TaskDecl:
    case NodeKind::Block:
    case NodeKind::Instance:
      if (n.name) out.insert(*n.name);
      break;
    default:
      break;
  }
  for (const auto& c : n.children) collect_declared(c, out);
}

inline void apply_renames(RawNode& n, const std::map<std::string, std::string>& renames) {
  // Connection names belong to the instantiated module's namespace.
  const bool foreign = n.kind == NodeKind::PortConn || n.kind == NodeKind::ParamOverride;
  if (n.name && !foreign) {
    if (auto it = renames.find(*n.name); it != renames.end()) n.name = it->second;
  }
  for (auto& c : n.children) apply_renames(c, renames);
}

inline std::string fresh_name(std::mt19937_64& rng, const std::set<std::string>& taken) {
  static constexpr std::string_view kAlphabet = "abcdefghijklmnopqrstuvwxyz0123456789";
  while (true) {
    std::string name = "v_";
    for (int i = 0; i < 6; ++i) name += kAlphabet[draw(rng, kAlphabet.size())];
    if (!taken.contains(name)) return name;
  }
}

inline char random_digit(std::mt19937_64& rng, char base, bool nonzero) {
  static constexpr std::string_view kHex = "0123456789abcdef";
  std::size_t radix = 10;
  switch (base) {
    case 'b': radix = 2; break;
    case 'o': radix = 8; break;
    case 'h': radix = 16; break;
    default: break;
  }
  if (nonzero) return kHex[1 + draw(rng, radix - 1)];
  return kHex[draw(rng, radix)];
}

// Rewrites the value digits of a numeric literal, keeping its size, base,
// signedness, digit count, underscores and x/z/? positions.
inline std::optional<std::string> rewrite_number(std::string_view text, std::mt19937_64& rng) {
  if (text.empty() || text.front() == '"') return std::nullopt;
  std::string out(text);
  const std::size_t tick = out.find('\'');
  if (tick == std::string::npos) {
    // Decimal or real: every digit is value; keep a leading digit non-zero
    // in multi-digit integers so the token stays a plain decimal.
    bool in_exponent = false;
    bool first = true;
    for (char& ch : out) {
      if (ch == 'e' || ch == 'E') in_exponent = true;
      if (in_exponent || ch < '0' || ch > '9') continue;
      const bool keep_nonzero = first && out.size() > 1 && ch != '0';
      ch = random_digit(rng, 'd', keep_nonzero);
      first = false;
    }
    return out;
  }
  std::size_t i = tick + 1;
  if (i < out.size() && (out[i] == 's' || out[i] == 'S')) ++i;
  if (i >= out.size()) return std::nullopt;
  const char base = static_cast<char>(std::tolower(static_cast<unsigned char>(out[i])));
  for (++i; i < out.size(); ++i) {
    const char ch = static_cast<char>(std::tolower(static_cast<unsigned char>(out[i])));
    if (ch == '_' || ch == 'x' || ch == 'z' || ch == '?' || ch == ' ' || ch == '\t') continue;
    out[i] = random_digit(rng, base, false);
  }
  return out;
}

inline std::size_t rewrite_constants(RawNode& n, std::mt19937_64& rng) {
  std::size_t count = 0;
  if (n.kind == NodeKind::Const && n.value) {
    if (auto v = rewrite_number(*n.value, rng)) {
      n.value = std::move(*v);
      ++count;
    }
  }
  for (auto& c : n.children) count += rewrite_constants(c, rng);
  return count;
}

}  // namespace detail

/// Reorders the body items of module `module_index` to `order`, a
/// permutation of 0..k-1 over the k non-header items.
inline RawAst reorder_items(RawAst ast, std::size_t module_index,
                            const std::vector<std::size_t>& order) {
  RawNode& mod = ast.root.children.at(module_index);
  const auto idx = detail::body_item_indices(mod);
  std::vector<bool> used(idx.size(), false);
  if (order.size() != idx.size()) throw MutationError("order does not cover every module item");
  for (std::size_t o : order) {
    if (o >= idx.size() || used[o]) throw MutationError("order is not a permutation");
    used[o] = true;
  }
  std::vector<RawNode> items;
  items.reserve(idx.size());
  for (std::size_t o : order) items.push_back(mod.children[idx[o]]);
  for (std::size_t i = 0; i < idx.size(); ++i) mod.children[idx[i]] = std::move(items[i]);
  return ast;
}

/// Applies one seeded, structure-preserving mutation to a parsed AST.
/// Throws MutationError when the mutation has nothing to act on.
inline RawAst mutate_ast(RawAst ast, const MutationSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  switch (spec.kind) {
    case MutationKind::ReorderTopItems: {
      bool any = false;
      for (std::size_t m = 0; m < ast.root.children.size(); ++m) {
        const std::size_t n = detail::body_item_indices(ast.root.children[m]).size();
        if (n < 2) continue;
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[detail::draw(rng, i + 1)]);
        bool identity = true;
        for (std::size_t i = 0; i < n; ++i) identity = identity && order[i] == i;
        if (identity) std::swap(order[0], order[1]);
        ast = reorder_items(std::move(ast), m, order);
        any = true;
      }
      if (!any) throw MutationError("reorder needs a module with at least 2 items");
      return ast;
    }
    case MutationKind::RenameIdentifiers: {
      std::set<std::string> taken;
      detail::collect_names(ast.root, taken);
      bool any = false;
      for (auto& mod : ast.root.children) {
        std::set<std::string> declared;
        for (const auto& c : mod.children) detail::collect_declared(c, declared);
        if (declared.empty()) continue;
        std::map<std::string, std::string> renames;
        for (const auto& name : declared) {
          std::string fresh = detail::fresh_name(rng, taken);
          taken.insert(fresh);
          renames.emplace(name, std::move(fresh));
        }
        for (auto& c : mod.children) detail::apply_renames(c, renames);
        any = true;
      }
      if (!any) throw MutationError("rename found no declared identifiers");
      return ast;
    }
    case MutationKind::RewriteConstants: {
      if (detail::rewrite_constants(ast.root, rng) == 0) {
        throw MutationError("no numeric constants to rewrite");
      }
      return ast;
    }
  }
  return ast;
}

/// Source-level mutation: parse, mutate, re-print. The output re-parses.
inline std::string mutate(std::string_view code, const MutationSpec& spec) {
  ValidityClass v = classify(code);
  auto* parsed = std::get_if<Parsed>(&v);
  if (!parsed) throw MutationError("input is not parsable Verilog");
  std::string out = print_verilog(mutate_ast(std::move(parsed->ast), spec));
  if (!std::holds_alternative<Parsed>(classify(out))) {
    throw MutationError("mutated source failed to re-parse");
  }
  return out;
}

}  // namespace vsr
