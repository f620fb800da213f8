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

// httplib defaults to a backlog of 5, which drops bursts of clients.
#ifndef CPPHTTPLIB_LISTEN_BACKLOG
#define CPPHTTPLIB_LISTEN_BACKLOG 128
#endif
#include <httplib.h>
#include <json.hpp>

#include "vsr/service.hpp"
#include "vsr/version.hpp"

namespace vsr::service {

/// HTTP front end:
///   POST /v1/reward        one RewardRequest  -> one RewardResponse
///   POST /v1/reward/batch  [req, ...] or {"batch": [...]} -> {"batch": [...]}
///   GET  /healthz          {"status": "ok", "version": ...}
/// Malformed bodies get 400, oversized bodies 413.
class HttpServer {
 public:
  explicit HttpServer(Config cfg) : cfg_(cfg) {
    server_.set_payload_max_length(cfg_.max_body_bytes);
    // Responses are small; without this, keep-alive clients stall on delayed ACKs.
    server_.set_tcp_nodelay(true);

    server_.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
      json body = {{"status", "ok"}, {"version", std::string(kVersion)}};
      res.set_content(body.dump(), "application/json");
    });

    server_.Post("/v1/reward", [this](const httplib::Request& req, httplib::Response& res) {
      json body;
      if (!parse_body(req, res, body)) return;
      RewardResponse r = handle_request(body, cfg_);
      if (r.status == kInvalidRequest) res.status = 400;
      res.set_content(dump(to_json(r)), "application/json");
    });

    server_.Post("/v1/reward/batch", [this](const httplib::Request& req, httplib::Response& res) {
      json body;
      if (!parse_body(req, res, body)) return;
      const json* items = nullptr;
      if (body.is_array()) {
        items = &body;
      } else if (body.is_object() && body.contains("batch") && body["batch"].is_array()) {
        items = &body["batch"];
      }
      if (!items) {
        bad_request(res, "expected a JSON array or {\"batch\": [...]}");
        return;
      }
      res.set_content(dump(batch_to_json(handle_batch(*items, cfg_))), "application/json");
    });
  }

  /// Binds to host:port; port 0 picks a free port. Returns the bound port or
  /// -1 on failure.
  int bind(const std::string& host, int port) {
    if (port == 0) return server_.bind_to_any_port(host);
    return server_.bind_to_port(host, port) ? port : -1;
  }

  /// Blocks until stop() is called.
  bool listen() { return server_.listen_after_bind(); }

  void stop() { server_.stop(); }
  bool running() const { return server_.is_running(); }
  void wait_until_ready() const { server_.wait_until_ready(); }

 private:
  static void bad_request(httplib::Response& res, const std::string& msg) {
    res.status = 400;
    res.set_content(dump(to_json(invalid(std::nullopt, msg))), "application/json");
  }

  bool parse_body(const httplib::Request& req, httplib::Response& res, json& out) const {
    if (req.body.size() > cfg_.max_body_bytes) {
      res.status = 413;
      res.set_content(dump(to_json(invalid(std::nullopt, "request body too large"))),
                      "application/json");
      return false;
    }
    try {
      out = json::parse(req.body);
    } catch (const json::parse_error& e) {
      bad_request(res, std::string("malformed JSON: ") + e.what());
      return false;
    }
    return true;
  }

  Config cfg_;
  httplib::Server server_;
};

}  // namespace vsr::service
