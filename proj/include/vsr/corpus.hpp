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
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "vsr/clean_ast.hpp"
#include "vsr/error.hpp"
#include "vsr/frontend.hpp"
#include "vsr/lexer.hpp"

namespace vsr {

/// One specification / reference-code pair. The count and tree fields are
/// filled by curate().
struct CorpusRecord {
  std::string id;
  std::string spec;
  std::string code;
  std::size_t spec_tokens = 0;
  std::size_t code_tokens = 0;
  std::optional<TreeStats> tree;
};

enum class Tokenizer {
  Lexical,     // Verilog tokens for code, whitespace words for specs
  Whitespace,  // whitespace words for both
};

struct FilterConfig {
  std::size_t max_tokens = 4096;
  Tokenizer tokenizer = Tokenizer::Lexical;
};

enum class DropReason { Length, Unparsable };

inline std::string_view to_string(DropReason r) {
  return r == DropReason::Length ? "length" : "unparsable";
}

struct DroppedRecord {
  CorpusRecord record;
  DropReason reason = DropReason::Length;
  std::string detail;
};

struct CurationResult {
  std::vector<CorpusRecord> kept;
  std::vector<DroppedRecord> dropped;
};

inline std::size_t count_words(std::string_view text) {
  std::size_t n = 0;
  bool in_word = false;
  for (unsigned char c : text) {
    const bool ws = c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
    if (!ws && !in_word) ++n;
    in_word = !ws;
  }
  return n;
}

/// Lexical token count; falls back to whitespace words for text that does
/// not lex.
inline std::size_t count_code_tokens(std::string_view code, Tokenizer tokenizer) {
  if (tokenizer == Tokenizer::Whitespace) return count_words(code);
  try {
    return lex(code).size();
  } catch (const LexError&) {
    return count_words(code);
  }
}

/// Reads one `{"id", "spec", "code"}` object per line. Blank lines are
/// skipped; other fields are ignored. Throws FormatError naming the line.
inline std::vector<CorpusRecord> ingest(std::istream& in) {
  std::vector<CorpusRecord> out;
  std::set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw FormatError("line " + std::to_string(line_no) + ": malformed JSON: " + e.what(), line_no);
    }
    if (!j.is_object()) {
      throw FormatError("line " + std::to_string(line_no) + ": expected a JSON object", line_no);
    }
    CorpusRecord r;
    for (const char* field : {"id", "spec", "code"}) {
      auto it = j.find(field);
      if (it == j.end() || !it->is_string()) {
        throw FormatError("line " + std::to_string(line_no) + ": missing string field \"" + field + "\"",
                          line_no);
      }
    }
    r.id = j["id"].get<std::string>();
    r.spec = j["spec"].get<std::string>();
    r.code = j["code"].get<std::string>();
    if (!ids.insert(r.id).second) {
      throw FormatError("line " + std::to_string(line_no) + ": duplicate id \"" + r.id + "\"", line_no);
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<CorpusRecord> ingest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  return ingest(in);
}

/// Drops over-length records (spec or code beyond cfg.max_tokens) and
/// records whose code does not parse. Both output lists keep input order.
inline CurationResult curate(const std::vector<CorpusRecord>& records, const FilterConfig& cfg = {}) {
  if (cfg.max_tokens < 1) throw DomainError("max_tokens must be at least 1");
  CurationResult result;
  for (const auto& in : records) {
    CorpusRecord r = in;
    r.spec_tokens = count_words(r.spec);
    r.code_tokens = count_code_tokens(r.code, cfg.tokenizer);
    if (r.spec_tokens > cfg.max_tokens || r.code_tokens > cfg.max_tokens) {
      std::string detail = r.spec_tokens > cfg.max_tokens
                               ? "spec has " + std::to_string(r.spec_tokens) + " tokens"
                               : "code has " + std::to_string(r.code_tokens) + " tokens";
      result.dropped.push_back({std::move(r), DropReason::Length, std::move(detail)});
      continue;
    }
    ValidityClass v = classify(r.code);
    if (const auto* p = std::get_if<Parsed>(&v)) {
      r.tree = stats(clean(p->ast));
      result.kept.push_back(std::move(r));
    } else {
      const auto& diags = *diagnostics_of(v);
      std::string detail(to_string(validity_of(v)));
      if (!diags.empty()) detail += ": " + diags.front().message;
      result.dropped.push_back({std::move(r), DropReason::Unparsable, std::move(detail)});
    }
  }
  return result;
}

struct StatRow {
  std::string metric;
  double min = 0.0;
  double mean = 0.0;
  double max = 0.0;
};

struct CorpusStats {
  std::size_t records = 0;
  std::vector<StatRow> rows;  // spec_tokens, code_tokens, depth, node_count, mean_branching
};

/// min / mean / max per column over curated records. Throws DomainError on
/// an empty corpus or on records without tree statistics.
inline CorpusStats corpus_stats(const std::vector<CorpusRecord>& records) {
  if (records.empty()) throw DomainError("corpus is empty");
  const char* names[] = {"spec_tokens", "code_tokens", "depth", "node_count", "mean_branching"};
  CorpusStats out;
  out.records = records.size();
  for (const char* name : names) {
    out.rows.push_back({name, std::numeric_limits<double>::infinity(), 0.0,
                        -std::numeric_limits<double>::infinity()});
  }
  for (const auto& r : records) {
    if (!r.tree) throw DomainError("record '" + r.id + "' has no tree statistics; curate first");
    const double values[] = {static_cast<double>(r.spec_tokens), static_cast<double>(r.code_tokens),
                             static_cast<double>(r.tree->depth),
                             static_cast<double>(r.tree->node_count), r.tree->mean_branching};
    for (std::size_t i = 0; i < out.rows.size(); ++i) {
      out.rows[i].min = std::min(out.rows[i].min, values[i]);
      out.rows[i].max = std::max(out.rows[i].max, values[i]);
      out.rows[i].mean += values[i];
    }
  }
  for (auto& row : out.rows) row.mean /= static_cast<double>(records.size());
  return out;
}

inline std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

/// Tab-separated table: header line, then one row per metric.
inline std::string format_stats_tsv(const CorpusStats& s) {
  std::string out = "metric\tmin\tmean\tmax\n";
  for (const auto& r : s.rows) {
    out += r.metric + "\t" + fixed6(r.min) + "\t" + fixed6(r.mean) + "\t" + fixed6(r.max) + "\n";
  }
  return out;
}

inline void write_jsonl(const std::vector<CorpusRecord>& records, std::ostream& out) {
  for (const auto& r : records) {
    nlohmann::json j = {{"id", r.id}, {"spec", r.spec}, {"code", r.code}};
    out << j.dump() << '\n';
  }
}

}  // namespace vsr
