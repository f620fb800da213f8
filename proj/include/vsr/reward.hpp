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
#include <atomic>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include "vsr/clean_ast.hpp"
#include "vsr/error.hpp"
#include "vsr/frontend.hpp"
#include "vsr/similarity.hpp"

namespace vsr {

inline constexpr double kRewardScale = 10.0;
inline constexpr double kParseFailReward = -5.0;
inline constexpr double kNotCodeReward = -10.0;

/// Reward for one generation. `sim` is present iff status is Parsed.
struct RewardOutcome {
  Validity status = Validity::NotCode;
  std::optional<SimScore> sim;
  double reward = kNotCodeReward;

  friend bool operator==(const RewardOutcome&, const RewardOutcome&) = default;
};

inline RewardOutcome reward_for_similarity(SimScore s) {
  return RewardOutcome{Validity::Parsed, s, kRewardScale * s.value};
}

/// Tiered reward of `gen` against the trusted reference `ref`:
/// 10 * similarity when gen parses, -5 when it looks like code but does not
/// parse, -10 otherwise. Throws ReferenceError when `ref` does not parse;
/// similarity errors (ResourceError, TimeoutError) propagate.
inline RewardOutcome reward(std::string_view gen, std::string_view ref,
                            SimMode mode = SimMode::Ast, const SimOptions& opts = {}) {
  ValidityClass ref_class = classify(ref);
  if (!std::holds_alternative<Parsed>(ref_class)) {
    const auto& diags = *diagnostics_of(ref_class);
    throw ReferenceError("reference is " + std::string(to_string(validity_of(ref_class))) +
                         (diags.empty() ? "" : ": " + format_diagnostic(diags.front())));
  }
  ValidityClass gen_class = classify(gen);
  switch (validity_of(gen_class)) {
    case Validity::NotCode:
      return RewardOutcome{Validity::NotCode, std::nullopt, kNotCodeReward};
    case Validity::ParseFail:
      return RewardOutcome{Validity::ParseFail, std::nullopt, kParseFailReward};
    case Validity::Parsed:
      break;
  }
  const CleanNode gen_tree = clean(std::get<Parsed>(gen_class).ast);
  const CleanNode ref_tree = clean(std::get<Parsed>(ref_class).ast);
  return reward_for_similarity(similarity(gen_tree, ref_tree, mode, opts));
}

/// Per-element failure in a batch; never a reward tier.
struct RewardFailure {
  enum class Kind { Reference, Timeout, Resource };
  Kind kind = Kind::Reference;
  std::string message;

  friend bool operator==(const RewardFailure&, const RewardFailure&) = default;
};

using RewardResult = std::variant<RewardOutcome, RewardFailure>;

struct RewardPair {
  std::string generated;
  std::string reference;
};

inline RewardResult try_reward(std::string_view gen, std::string_view ref,
                               SimMode mode = SimMode::Ast, const SimOptions& opts = {}) {
  try {
    return reward(gen, ref, mode, opts);
  } catch (const ReferenceError& e) {
    return RewardFailure{RewardFailure::Kind::Reference, e.what()};
  } catch (const TimeoutError& e) {
    return RewardFailure{RewardFailure::Kind::Timeout, e.what()};
  } catch (const ResourceError& e) {
    return RewardFailure{RewardFailure::Kind::Resource, e.what()};
  }
}

/// Element-wise reward; output order equals input order. With `threads` > 1
/// elements are evaluated concurrently.
inline std::vector<RewardResult> reward_batch(const std::vector<RewardPair>& pairs,
                                              SimMode mode = SimMode::Ast,
                                              const SimOptions& opts = {},
                                              unsigned threads = 1) {
  std::vector<RewardResult> out(pairs.size());
  if (threads <= 1 || pairs.size() < 2) {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      out[i] = try_reward(pairs[i].generated, pairs[i].reference, mode, opts);
    }
    return out;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < pairs.size(); i = next++) {
      out[i] = try_reward(pairs[i].generated, pairs[i].reference, mode, opts);
    }
  };
  {
    std::vector<std::jthread> pool;
    const std::size_t n = std::min<std::size_t>(threads, pairs.size());
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
  }
  return out;
}

}  // namespace vsr
