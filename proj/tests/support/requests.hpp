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

// Randomized reward requests and the response the library alone predicts
// for each, for checking the service front ends.

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "support/test_data.hpp"
#include "vsr/mutate.hpp"
#include "vsr/reward.hpp"

namespace vsr_test {

struct RequestCase {
  std::string id;
  std::string generated;
  std::string reference;
  std::string mode;  // "ast" or "seq"
};

class RequestFactory {
 public:
  explicit RequestFactory(std::uint64_t seed) : rng_(seed) {
    for (const auto& p : golden_files()) sources_.push_back(read_text(p));
    sources_.push_back(read_text(fixture("reorder_left.v")));
    sources_.push_back(read_text(fixture("reorder_right.v")));
    sources_.push_back(read_text(fixture("near_miss.v")));
  }

  RequestCase next() {
    RequestCase r;
    r.id = "req-" + std::to_string(counter_++);
    r.mode = (rng_() % 3 == 0) ? "seq" : "ast";
    r.reference = pick();
    switch (rng_() % 8) {
      case 0: r.generated = r.reference; break;
      case 1: r.generated = pick(); break;
      case 2: r.generated = "Here is how I would describe the circuit in words."; break;
      case 3: {  // truncated source: usually parse_fail or not_code
        const std::string s = pick();
        r.generated = s.substr(0, rng_() % s.size());
        break;
      }
      case 4: r.generated = mutated(r.reference); break;
      case 5: {  // random byte noise spliced in
        r.generated = pick();
        const std::size_t at = rng_() % r.generated.size();
        r.generated.insert(at, std::string(1 + rng_() % 4, static_cast<char>(rng_() % 256)));
        break;
      }
      case 6:
        r.generated = pick();
        r.reference = "module broken(; endmodule";
        break;
      default: r.generated = mutated(pick()); break;
    }
    return r;
  }

 private:
  const std::string& pick() { return sources_[rng_() % sources_.size()]; }

  std::string mutated(const std::string& src) {
    const auto kind = static_cast<vsr::MutationKind>(rng_() % 3);
    try {
      return vsr::mutate(src, {kind, rng_()});
    } catch (const vsr::MutationError&) {
      return src;
    }
  }

  std::mt19937_64 rng_;
  std::vector<std::string> sources_;
  std::uint64_t counter_ = 0;
};

inline nlohmann::json request_json(const RequestCase& r) {
  return nlohmann::json{{"id", r.id}, {"generated", r.generated}, {"reference", r.reference},
                        {"mode", r.mode}};
}

// Serialized request line; invalid UTF-8 becomes U+FFFD, as on the wire.
inline std::string request_line(const RequestCase& r) {
  return request_json(r).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

// The request as the service decodes it after transmission.
inline RequestCase as_transmitted(const RequestCase& r) {
  const auto j = nlohmann::json::parse(request_line(r));
  RequestCase out = r;
  out.generated = j["generated"].get<std::string>();
  out.reference = j["reference"].get<std::string>();
  return out;
}

// Expected wire fields computed straight from the reward library.
struct Expected {
  std::string status;
  std::optional<double> sim;
  std::optional<double> reward;
  bool has_error = false;
};

inline Expected expected_from_library(const RequestCase& r) {
  const vsr::SimMode mode = r.mode == "seq" ? vsr::SimMode::Seq : vsr::SimMode::Ast;
  Expected e;
  try {
    const vsr::RewardOutcome o = vsr::reward(r.generated, r.reference, mode);
    e.status = std::string(vsr::to_string(o.status));
    if (o.sim) e.sim = o.sim->value;
    e.reward = o.reward;
  } catch (const vsr::ReferenceError&) {
    e.status = "reference_error";
    e.has_error = true;
  }
  return e;
}

// Empty string when `resp` matches; otherwise a description of the mismatch.
inline std::string compare_response(const RequestCase& r, const nlohmann::json& resp) {
  const Expected e = expected_from_library(r);
  auto num = [&](const char* key) -> std::optional<double> {
    if (!resp.contains(key)) return std::nullopt;
    return resp[key].get<double>();
  };
  if (!resp.contains("id") || resp["id"] != r.id) return "id mismatch";
  if (resp.value("status", "") != e.status) return "status " + resp.value("status", "") + " vs " + e.status;
  if (num("sim") != e.sim) return "sim mismatch";
  if (num("reward") != e.reward) return "reward mismatch";
  if (resp.contains("error") != e.has_error) return "error field mismatch";
  return {};
}

}  // namespace vsr_test
