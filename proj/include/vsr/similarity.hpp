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
#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "vsr/clean_ast.hpp"
#include "vsr/error.hpp"
#include "vsr/frontend.hpp"

namespace vsr {

/// Structural similarity in [0, 1].
struct SimScore {
  double value = 0.0;
  friend bool operator==(const SimScore&, const SimScore&) = default;
};

enum class SimMode { Ast, Seq };

inline std::string_view to_string(SimMode m) { return m == SimMode::Ast ? "ast" : "seq"; }

inline std::optional<SimMode> sim_mode_from_string(std::string_view s) {
  if (s == "ast") return SimMode::Ast;
  if (s == "seq") return SimMode::Seq;
  return std::nullopt;
}

inline constexpr std::size_t kDefaultDepthLimit = 512;

struct SimOptions {
  /// Trees deeper than this are rejected with ResourceError.
  std::size_t depth_limit = kDefaultDepthLimit;
  /// Checked periodically; exceeding it throws TimeoutError.
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

/// Child-index path from a root; empty for the root itself.
using TreePath = std::vector<std::size_t>;

struct MatchStep {
  TreePath left;
  TreePath right;
  double score = 0.0;
};

/// Every child pairing chosen during one comparison, parents before their
/// descendants, in the order the matches were made.
using MatchTrace = std::vector<MatchStep>;

namespace detail {

class Matcher {
 public:
  explicit Matcher(const SimOptions& opts) : opts_(opts) {}

  void check_depth(const CleanNode& a, const CleanNode& b) const {
    const std::size_t da = tree_depth(a);
    const std::size_t db = tree_depth(b);
    if (da > opts_.depth_limit || db > opts_.depth_limit) {
      throw ResourceError("tree depth " + std::to_string(std::max(da, db)) +
                          " exceeds limit " + std::to_string(opts_.depth_limit));
    }
  }

  // Order-insensitive greedy matching. `trace` may be null.
  double greedy(const CleanNode& t1, const CleanNode& t2, TreePath& p1, TreePath& p2,
                MatchTrace* trace) {
    tick();
    if (t1.kind != t2.kind) return 0.0;
    const auto& c1s = t1.children;
    const auto& c2s = t2.children;
    double sum = 0.0;
    std::vector<bool> seen(c2s.size(), false);
    MatchTrace candidate;
    MatchTrace best_sub;
    for (std::size_t i = 0; i < c1s.size(); ++i) {
      double best_s = 0.0;
      std::size_t best_c = c2s.size();
      p1.push_back(i);
      for (std::size_t j = 0; j < c2s.size(); ++j) {
        if (seen[j] || c1s[i].kind != c2s[j].kind) continue;
        p2.push_back(j);
        candidate.clear();
        const double s = greedy(c1s[i], c2s[j], p1, p2, trace ? &candidate : nullptr);
        p2.pop_back();
        if (s > best_s) {
          best_s = s;
          best_c = j;
          if (trace) std::swap(best_sub, candidate);
        }
      }
      if (best_c != c2s.size()) {
        sum += best_s;
        seen[best_c] = true;
        if (trace) {
          TreePath right = p2;
          right.push_back(best_c);
          trace->push_back(MatchStep{p1, std::move(right), best_s});
          trace->insert(trace->end(), best_sub.begin(), best_sub.end());
        }
      }
      best_sub.clear();
      p1.pop_back();
    }
    const std::size_t max_size = std::max(c1s.size(), c2s.size());
    return max_size > 0 ? sum / static_cast<double>(max_size) : 1.0;
  }

  // Positional matching: child i against child i.
  double sequential(const CleanNode& t1, const CleanNode& t2) {
    tick();
    if (t1.kind != t2.kind) return 0.0;
    const auto& c1s = t1.children;
    const auto& c2s = t2.children;
    double sum = 0.0;
    const std::size_t paired = std::min(c1s.size(), c2s.size());
    for (std::size_t i = 0; i < paired; ++i) sum += sequential(c1s[i], c2s[i]);
    const std::size_t max_size = std::max(c1s.size(), c2s.size());
    return max_size > 0 ? sum / static_cast<double>(max_size) : 1.0;
  }

 private:
  void tick() {
    if (!opts_.deadline || (++calls_ & 0x3FF) != 0) return;
    if (std::chrono::steady_clock::now() > *opts_.deadline) {
      throw TimeoutError("similarity computation exceeded its time limit");
    }
  }

  const SimOptions& opts_;
  std::size_t calls_ = 0;
};

}  // namespace detail

/// Order-insensitive similarity: each child of `t1`, in order, takes the
/// unmatched same-kind child of `t2` with the strictly highest recursive
/// score (earliest wins ties). Not symmetric in general.
inline SimScore sim_ast(const CleanNode& t1, const CleanNode& t2, const SimOptions& opts = {}) {
  detail::Matcher m(opts);
  m.check_depth(t1, t2);
  TreePath p1, p2;
  return SimScore{m.greedy(t1, t2, p1, p2, nullptr)};
}

/// As sim_ast, also recording the chosen matches into `trace`.
inline SimScore sim_ast(const CleanNode& t1, const CleanNode& t2, MatchTrace& trace,
                        const SimOptions& opts = {}) {
  detail::Matcher m(opts);
  m.check_depth(t1, t2);
  trace.clear();
  TreePath p1, p2;
  return SimScore{m.greedy(t1, t2, p1, p2, &trace)};
}

/// Positional similarity: child i is compared only with child i.
inline SimScore sim_ast_seq(const CleanNode& t1, const CleanNode& t2,
                            const SimOptions& opts = {}) {
  detail::Matcher m(opts);
  m.check_depth(t1, t2);
  return SimScore{m.sequential(t1, t2)};
}

inline SimScore similarity(const CleanNode& t1, const CleanNode& t2, SimMode mode,
                           const SimOptions& opts = {}) {
  return mode == SimMode::Ast ? sim_ast(t1, t2, opts) : sim_ast_seq(t1, t2, opts);
}

enum class Side { Reference, Generated };

inline std::string_view to_string(Side s) {
  return s == Side::Reference ? "reference" : "generated";
}

/// Why compare_sources could not produce a score.
struct ValidityReport {
  Side side = Side::Generated;
  Validity status = Validity::NotCode;
  std::vector<Diagnostic> diagnostics;
};

using CompareResult = std::variant<SimScore, ValidityReport>;

/// classify -> clean -> similarity over whole source units. The generated
/// tree is the first argument of the similarity, as in the reward.
inline CompareResult compare_sources(std::string_view ref, std::string_view gen, SimMode mode,
                                     const SimOptions& opts = {}) {
  ValidityClass ref_class = classify(ref);
  if (!std::holds_alternative<Parsed>(ref_class)) {
    return ValidityReport{Side::Reference, validity_of(ref_class), *diagnostics_of(ref_class)};
  }
  ValidityClass gen_class = classify(gen);
  if (!std::holds_alternative<Parsed>(gen_class)) {
    return ValidityReport{Side::Generated, validity_of(gen_class), *diagnostics_of(gen_class)};
  }
  const CleanNode ref_tree = clean(std::get<Parsed>(ref_class).ast);
  const CleanNode gen_tree = clean(std::get<Parsed>(gen_class).ast);
  return similarity(gen_tree, ref_tree, mode, opts);
}

inline std::string format_path(const TreePath& p) {
  if (p.empty()) return "/";
  std::string out;
  for (std::size_t i : p) out += "/" + std::to_string(i);
  return out;
}

}  // namespace vsr
