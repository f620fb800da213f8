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

#include <fstream>
#include <istream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vsr/error.hpp"
#include "vsr/metrics.hpp"

namespace vsr {

// Reads `{"task": <string|integer>, "trials": [bool, ...]}` per line.
inline std::vector<TaskOutcome> read_outcomes(std::istream& in) {
  std::vector<TaskOutcome> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw FormatError(where + "malformed JSON: " + e.what(), line_no);
    }
    if (!j.is_object()) throw FormatError(where + "expected a JSON object", line_no);
    TaskOutcome t;
    auto task = j.find("task");
    if (task == j.end()) throw FormatError(where + "missing \"task\"", line_no);
    if (task->is_string()) {
      t.task = task->get<std::string>();
    } else if (task->is_number_integer()) {
      t.task = task->dump();
    } else {
      throw FormatError(where + "\"task\" must be a string or integer", line_no);
    }
    auto trials = j.find("trials");
    if (trials == j.end() || !trials->is_array()) {
      throw FormatError(where + "\"trials\" must be an array of booleans", line_no);
    }
    for (const auto& v : *trials) {
      if (!v.is_boolean()) throw FormatError(where + "\"trials\" must be an array of booleans", line_no);
      t.trials.push_back(v.get<bool>());
    }
    out.push_back(std::move(t));
  }
  return out;
}

inline std::vector<TaskOutcome> read_outcomes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  return read_outcomes(in);
}

}  // namespace vsr
