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

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace vsr {

// Append-only. The serialized tree format names kinds by these spellings, and
// stored trees must keep decoding across releases.
#define VSR_NODE_KINDS(X) \
  X(SourceUnit)           \
  X(ModuleDef)            \
  X(PortRef)              \
  X(InputPort)            \
  X(OutputPort)           \
  X(InoutPort)            \
  X(ParamDecl)            \
  X(LocalparamDecl)       \
  X(WireDecl)             \
  X(RegDecl)              \
  X(IntegerDecl)          \
  X(RealDecl)             \
  X(TimeDecl)             \
  X(Signed)               \
  X(Width)                \
  X(ArrayDim)             \
  X(ContinuousAssign)     \
  X(Always)               \
  X(Initial)              \
  X(SensList)             \
  X(EdgePosedge)          \
  X(EdgeNegedge)          \
  X(LevelSense)           \
  X(StarSense)            \
  X(Block)                \
  X(BlockingAssign)       \
  X(NonblockingAssign)    \
  X(IfStmt)               \
  X(CaseStmt)             \
  X(CasezStmt)            \
  X(CasexStmt)            \
  X(CaseItem)             \
  X(DefaultCaseItem)      \
  X(ForStmt)              \
  X(NullStmt)             \
  X(Instance)             \
  X(ParamOverride)        \
  X(PortConn)             \
  X(FuncDecl)             \
  X(TaskDecl)             \
  X(FuncCall)             \
  X(TaskCall)             \
  X(Ternary)              \
  X(Concat)               \
  X(Repeat)               \
  X(BitSelect)            \
  X(PartSelect)           \
  X(PartSelectUp)         \
  X(PartSelectDown)       \
  X(Id)                   \
  X(Const)                \
  X(Plus)                 \
  X(Minus)                \
  X(Times)                \
  X(Div)                  \
  X(Mod)                  \
  X(Power)                \
  X(And)                  \
  X(Or)                   \
  X(Xor)                  \
  X(Xnor)                 \
  X(Shl)                  \
  X(Shr)                  \
  X(AShl)                 \
  X(AShr)                 \
  X(Eq)                   \
  X(Neq)                  \
  X(CaseEq)               \
  X(CaseNeq)              \
  X(Lt)                   \
  X(Lte)                  \
  X(Gt)                   \
  X(Gte)                  \
  X(LogicalAnd)           \
  X(LogicalOr)            \
  X(Not)                  \
  X(BitNot)               \
  X(UnaryMinus)           \
  X(UnaryPlus)            \
  X(ReduceAnd)            \
  X(ReduceOr)             \
  X(ReduceXor)            \
  X(ReduceNand)           \
  X(ReduceNor)            \
  X(ReduceXnor)

enum class NodeKind : std::uint16_t {
#define VSR_ENUM_ENTRY(name) name,
  VSR_NODE_KINDS(VSR_ENUM_ENTRY)
#undef VSR_ENUM_ENTRY
};

inline constexpr std::array kNodeKindNames = {
#define VSR_NAME_ENTRY(name) std::string_view{#name},
    VSR_NODE_KINDS(VSR_NAME_ENTRY)
#undef VSR_NAME_ENTRY
};

inline constexpr std::size_t kNodeKindCount = kNodeKindNames.size();

constexpr std::string_view kind_name(NodeKind k) {
  return kNodeKindNames[static_cast<std::size_t>(k)];
}

constexpr std::optional<NodeKind> kind_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kNodeKindCount; ++i) {
    if (kNodeKindNames[i] == name) return static_cast<NodeKind>(i);
  }
  return std::nullopt;
}

constexpr bool is_binary_operator(NodeKind k) {
  return k >= NodeKind::Plus && k <= NodeKind::LogicalOr;
}

constexpr bool is_unary_operator(NodeKind k) {
  return k >= NodeKind::Not && k <= NodeKind::ReduceXnor;
}

/// Kinds that form an expression subtree (as opposed to declarations,
/// statements and the marker leaves Signed/Width/ArrayDim).
constexpr bool is_expression(NodeKind k) {
  switch (k) {
    case NodeKind::Id:
    case NodeKind::Const:
    case NodeKind::Ternary:
    case NodeKind::Concat:
    case NodeKind::Repeat:
    case NodeKind::BitSelect:
    case NodeKind::PartSelect:
    case NodeKind::PartSelectUp:
    case NodeKind::PartSelectDown:
    case NodeKind::FuncCall:
      return true;
    default:
      return is_binary_operator(k) || is_unary_operator(k);
  }
}

constexpr bool is_port_decl(NodeKind k) {
  return k == NodeKind::InputPort || k == NodeKind::OutputPort ||
         k == NodeKind::InoutPort;
}

constexpr bool is_net_decl(NodeKind k) {
  return k == NodeKind::WireDecl || k == NodeKind::RegDecl ||
         k == NodeKind::IntegerDecl || k == NodeKind::RealDecl ||
         k == NodeKind::TimeDecl;
}

constexpr bool is_param_decl(NodeKind k) {
  return k == NodeKind::ParamDecl || k == NodeKind::LocalparamDecl;
}

}  // namespace vsr
