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
#include <chrono>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "vsr/error.hpp"
#include "vsr/reward.hpp"
#include "vsr/similarity.hpp"
#include "vsr/version.hpp"

namespace vsr::service {

using nlohmann::json;

struct Config {
  std::chrono::milliseconds timeout{5000};
  std::size_t max_body_bytes = std::size_t{8} << 20;
  std::size_t depth_limit = kDefaultDepthLimit;
  /// Batch elements evaluated concurrently.
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
};

struct RewardRequest {
  std::string id;
  std::string generated;
  std::string reference;
  SimMode mode = SimMode::Ast;
};

// Wire statuses. The first four mirror the reward tiers plus the reference
// failure; the rest report requests that could not be evaluated.
inline constexpr std::string_view kParsed = "parsed";
inline constexpr std::string_view kParseFail = "parse_fail";
inline constexpr std::string_view kNotCode = "not_code";
inline constexpr std::string_view kReferenceError = "reference_error";
inline constexpr std::string_view kTimeout = "timeout";
inline constexpr std::string_view kResourceError = "resource_error";
inline constexpr std::string_view kInvalidRequest = "invalid_request";

struct RewardResponse {
  std::optional<std::string> id;
  std::string status;
  std::optional<double> sim;
  std::optional<double> reward;
  std::optional<std::string> error;

  friend bool operator==(const RewardResponse&, const RewardResponse&) = default;
};

class RequestError : public Error {
 public:
  RequestError(const std::string& what, std::optional<std::string> id)
      : Error(what), id_(std::move(id)) {}
  const std::optional<std::string>& id() const { return id_; }

 private:
  std::optional<std::string> id_;
};

/// Validates one request object. Unknown fields are ignored.
inline RewardRequest parse_request(const json& j) {
  if (!j.is_object()) throw RequestError("request must be a JSON object", std::nullopt);
  std::optional<std::string> id;
  if (auto it = j.find("id"); it != j.end() && it->is_string()) id = it->get<std::string>();
  if (!id || id->empty()) throw RequestError("\"id\" must be a non-empty string", std::nullopt);
  RewardRequest r;
  r.id = *id;
  for (const char* field : {"generated", "reference"}) {
    auto it = j.find(field);
    if (it == j.end() || !it->is_string()) {
      throw RequestError(std::string("\"") + field + "\" must be a string", id);
    }
  }
  r.generated = j["generated"].get<std::string>();
  r.reference = j["reference"].get<std::string>();
  if (auto it = j.find("mode"); it != j.end() && !it->is_null()) {
    const auto mode = it->is_string() ? sim_mode_from_string(it->get<std::string>()) : std::nullopt;
    if (!mode) throw RequestError("\"mode\" must be \"ast\" or \"seq\"", id);
    r.mode = *mode;
  }
  return r;
}

inline RewardResponse to_response(std::optional<std::string> id, const RewardResult& result) {
  RewardResponse resp;
  resp.id = std::move(id);
  if (const auto* o = std::get_if<RewardOutcome>(&result)) {
    switch (o->status) {
      case Validity::Parsed: resp.status = kParsed; break;
      case Validity::ParseFail: resp.status = kParseFail; break;
      case Validity::NotCode: resp.status = kNotCode; break;
    }
    if (o->sim) resp.sim = o->sim->value;
    resp.reward = o->reward;
    return resp;
  }
  const auto& f = std::get<RewardFailure>(result);
  switch (f.kind) {
    case RewardFailure::Kind::Reference: resp.status = kReferenceError; break;
    case RewardFailure::Kind::Timeout: resp.status = kTimeout; break;
    case RewardFailure::Kind::Resource: resp.status = kResourceError; break;
  }
  resp.error = f.message;
  return resp;
}

inline RewardResponse evaluate(const RewardRequest& req, const Config& cfg) {
  SimOptions opts;
  opts.depth_limit = cfg.depth_limit;
  opts.deadline = std::chrono::steady_clock::now() + cfg.timeout;
  return to_response(req.id, try_reward(req.generated, req.reference, req.mode, opts));
}

inline RewardResponse invalid(const std::optional<std::string>& id, const std::string& msg) {
  return RewardResponse{id, std::string(kInvalidRequest), std::nullopt, std::nullopt, msg};
}

inline json to_json(const RewardResponse& r) {
  json j;
  j["id"] = r.id ? json(*r.id) : json(nullptr);
  j["status"] = r.status;
  if (r.sim) j["sim"] = *r.sim;
  if (r.reward) j["reward"] = *r.reward;
  if (r.error) j["error"] = *r.error;
  return j;
}

inline RewardResponse response_from_json(const json& j) {
  RewardResponse r;
  if (j.at("id").is_string()) r.id = j["id"].get<std::string>();
  r.status = j.at("status").get<std::string>();
  if (j.contains("sim")) r.sim = j["sim"].get<double>();
  if (j.contains("reward")) r.reward = j["reward"].get<double>();
  if (j.contains("error")) r.error = j["error"].get<std::string>();
  return r;
}

inline RewardResponse handle_request(const json& j, const Config& cfg) {
  try {
    return evaluate(parse_request(j), cfg);
  } catch (const RequestError& e) {
    return invalid(e.id(), e.what());
  }
}

/// Evaluates a batch in parallel; responses keep request order.
inline std::vector<RewardResponse> handle_batch(const json& items, const Config& cfg) {
  std::vector<RewardResponse> out(items.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) out[i] = handle_request(items[i], cfg);
  };
  const std::size_t n = std::min<std::size_t>(std::max(1u, cfg.threads), items.size());
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
  }
  return out;
}

/// Compact single-line JSON; invalid UTF-8 echoed from input is replaced.
inline std::string dump(const json& j) {
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

inline json batch_to_json(const std::vector<RewardResponse>& responses) {
  json arr = json::array();
  for (const auto& r : responses) arr.push_back(to_json(r));
  return json{{"batch", std::move(arr)}};
}

/// One input line -> one output line. A `{"batch": [...]}` line is answered
/// by a single `{"batch": [...]}` line with one response per element.
inline std::string handle_line(std::string_view line, const Config& cfg) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    return dump(to_json(invalid(std::nullopt, std::string("malformed JSON: ") + e.what())));
  }
  if (j.is_object() && j.contains("batch")) {
    if (!j["batch"].is_array()) {
      return dump(to_json(invalid(std::nullopt, "\"batch\" must be an array")));
    }
    return dump(batch_to_json(handle_batch(j["batch"], cfg)));
  }
  return dump(to_json(handle_request(j, cfg)));
}

/// JSON-lines loop until EOF. Blank lines are ignored; bad lines get an
/// error response and the loop continues.
inline void serve_stdio(std::istream& in, std::ostream& out, const Config& cfg) {
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::string reply;
    if (line.size() > cfg.max_body_bytes) {
      reply = dump(to_json(invalid(std::nullopt, "request exceeds size limit")));
    } else {
      reply = handle_line(line, cfg);
    }
    out << reply << '\n';
    out.flush();
  }
}

inline json to_json(const RewardRequest& r) {
  return json{{"id", r.id},
              {"generated", r.generated},
              {"reference", r.reference},
              {"mode", std::string(to_string(r.mode))}};
}

}  // namespace vsr::service
