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
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "vsr/error.hpp"

namespace vsr {

/// Pass/fail record of every generation sampled for one task.
struct TaskOutcome {
  std::string task;
  std::vector<bool> trials;

  std::size_t successes() const {
    return static_cast<std::size_t>(std::count(trials.begin(), trials.end(), true));
  }
};

/// Unbiased pass@k estimate 1 - C(n-c, k) / C(n, k) for one task, in the
/// product form prod_{j<k} (n-c-j)/(n-j).
inline double pass_at_k(std::size_t n, std::size_t c, std::size_t k) {
  if (c > n) throw DomainError("pass@k: c=" + std::to_string(c) + " exceeds n=" + std::to_string(n));
  if (k < 1 || k > n) {
    throw DomainError("pass@k: k=" + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
  }
  if (n - c < k) return 1.0;
  double miss = 1.0;
  for (std::size_t j = 0; j < k; ++j) {
    miss *= static_cast<double>(n - c - j) / static_cast<double>(n - j);
  }
  return 1.0 - miss;
}

namespace detail {

inline void check_outcomes(const std::vector<TaskOutcome>& outcomes, std::size_t k) {
  if (outcomes.empty()) throw DomainError("no task outcomes");
  if (k < 1) throw DomainError("k must be at least 1");
  for (const auto& o : outcomes) {
    if (o.trials.size() < k) {
      throw DomainError("task '" + o.task + "' has " + std::to_string(o.trials.size()) +
                        " trials, fewer than k=" + std::to_string(k));
    }
  }
}

}  // namespace detail

/// Mean of the per-task pass@k estimates.
inline double aggregate_pass_at_k(const std::vector<TaskOutcome>& outcomes, std::size_t k) {
  detail::check_outcomes(outcomes, k);
  double total = 0.0;
  for (const auto& o : outcomes) total += pass_at_k(o.trials.size(), o.successes(), k);
  return total / static_cast<double>(outcomes.size());
}

/// Fraction of tasks with at least one pass among k chosen trials. By default
/// the first k recorded trials are used; with a seed, k trials are drawn
/// without replacement per task from a generator seeded once per call.
inline double hit_at_k(const std::vector<TaskOutcome>& outcomes, std::size_t k,
                       std::optional<std::uint64_t> resample_seed = std::nullopt) {
  detail::check_outcomes(outcomes, k);
  std::size_t hits = 0;
  std::mt19937_64 rng(resample_seed.value_or(0));
  std::vector<std::size_t> order;
  for (const auto& o : outcomes) {
    bool hit = false;
    if (resample_seed) {
      order.resize(o.trials.size());
      std::iota(order.begin(), order.end(), std::size_t{0});
      // Partial Fisher-Yates; std::shuffle's output is library-specific.
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng() % (order.size() - i));
        std::swap(order[i], order[j]);
        hit = hit || o.trials[order[i]];
      }
    } else {
      hit = std::find(o.trials.begin(), o.trials.begin() + static_cast<std::ptrdiff_t>(k), true) !=
            o.trials.begin() + static_cast<std::ptrdiff_t>(k);
    }
    if (hit) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(outcomes.size());
}

}  // namespace vsr
