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

// Command-line front end. Exit status: 0 success, 1 data or domain error,
// 2 usage error.

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vsr/http_service.hpp"
#include "vsr/vsr.hpp"

namespace {

constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw vsr::FormatError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fixed6(double v) { return vsr::fixed6(v); }

std::size_t depth_limit_from_env() {
  const char* env = std::getenv("VSR_DEPTH_LIMIT");
  if (!env || !*env) return vsr::kDefaultDepthLimit;
  std::string_view s(env);
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || value == 0) {
    throw UsageError("VSR_DEPTH_LIMIT must be a positive integer, got '" + std::string(s) + "'");
  }
  return value;
}

vsr::SimOptions sim_options() {
  vsr::SimOptions o;
  o.depth_limit = depth_limit_from_env();
  return o;
}

// Parses `path` or throws a data error naming the failure.
vsr::RawAst parse_file(const std::string& path) {
  const std::string src = read_file(path);
  vsr::ValidityClass v = vsr::classify(src);
  if (auto* p = std::get_if<vsr::Parsed>(&v)) return std::move(p->ast);
  const auto& diags = *vsr::diagnostics_of(v);
  std::string msg = path + ": " + std::string(vsr::to_string(vsr::validity_of(v)));
  if (!diags.empty()) msg += ": " + vsr::format_diagnostic(diags.front());
  throw vsr::FormatError(msg);
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw vsr::FormatError("cannot write " + path);
  out << text;
}

vsr::FilterConfig filter_config(std::size_t max_tokens, const std::string& tokenizer) {
  vsr::FilterConfig cfg;
  cfg.max_tokens = max_tokens;
  cfg.tokenizer = tokenizer == "whitespace" ? vsr::Tokenizer::Whitespace : vsr::Tokenizer::Lexical;
  return cfg;
}

// HOST:PORT with a numeric port.
std::pair<std::string, int> split_host_port(const std::string& s) {
  const auto colon = s.rfind(':');
  if (colon == std::string::npos || colon == 0) throw UsageError("--http expects HOST:PORT");
  int port = -1;
  const std::string p = s.substr(colon + 1);
  auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), port);
  if (ec != std::errc{} || ptr != p.data() + p.size() || port < 0 || port > 65535) {
    throw UsageError("invalid port in '" + s + "'");
  }
  return {s.substr(0, colon), port};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verilog structural similarity and reward engine"};
  app.set_version_flag("--version", std::string(vsr::kVersion));
  app.require_subcommand(1);

  // parse
  std::string parse_file_arg, parse_emit = "ast";
  auto* parse = app.add_subcommand("parse", "Lex or parse a Verilog file");
  parse->add_option("file", parse_file_arg, "Verilog source")->required();
  parse->add_option("--emit", parse_emit, "tokens or ast")
      ->check(CLI::IsMember({"tokens", "ast"}))
      ->capture_default_str();

  // clean
  std::string clean_file_arg, clean_emit = "text";
  auto* clean = app.add_subcommand("clean", "Print the cleaned AST or its statistics");
  clean->add_option("file", clean_file_arg, "Verilog source")->required();
  clean->add_option("--emit", clean_emit, "text or stats")
      ->check(CLI::IsMember({"text", "stats"}))
      ->capture_default_str();

  // sim
  std::string sim_mode = "ast", sim_ref, sim_gen;
  bool sim_trace = false;
  auto* sim = app.add_subcommand("sim", "Structural similarity of a generated file to a reference");
  sim->add_option("--mode", sim_mode, "ast or seq")
      ->check(CLI::IsMember({"ast", "seq"}))
      ->capture_default_str();
  sim->add_option("ref", sim_ref, "reference source")->required();
  sim->add_option("gen", sim_gen, "generated source")->required();
  sim->add_flag("--trace", sim_trace, "print the greedy matches (ast mode)");

  // reward
  std::string rw_ref, rw_gen, rw_mode = "ast";
  auto* rw = app.add_subcommand("reward", "Tiered reward of a generated file");
  rw->add_option("ref", rw_ref, "reference source")->required();
  rw->add_option("gen", rw_gen, "generated source")->required();
  rw->add_option("--mode", rw_mode, "ast or seq")
      ->check(CLI::IsMember({"ast", "seq"}))
      ->capture_default_str();

  // passk
  std::size_t pk_n = 0, pk_c = 0, pk_k = 0;
  auto* passk = app.add_subcommand("passk", "Unbiased pass@k for one task");
  passk->add_option("--n", pk_n, "trials")->required();
  passk->add_option("--c", pk_c, "successes")->required();
  passk->add_option("--k", pk_k, "k")->required();

  // report
  std::string rep_file;
  std::vector<std::size_t> rep_ks{1};
  std::vector<std::string> rep_metrics{"pass"};
  std::optional<std::uint64_t> rep_seed;
  auto* report = app.add_subcommand("report", "Aggregate pass@k / hit@k over an outcomes file");
  report->add_option("outcomes", rep_file, "JSONL of {\"task\", \"trials\"}")->required();
  report->add_option("--k", rep_ks, "comma-separated k values")->delimiter(',');
  report->add_option("--metric", rep_metrics, "pass, hit or both")
      ->delimiter(',')
      ->check(CLI::IsMember({"pass", "hit"}));
  report->add_option("--seed", rep_seed, "resample trials for hit@k with this seed");

  // corpus
  auto* corpus = app.add_subcommand("corpus", "Corpus curation tools");
  corpus->require_subcommand(1);
  std::string cf_in, cf_out, cf_tok = "lexical";
  std::size_t cf_max = 4096;
  auto* cfilter = corpus->add_subcommand("filter", "Drop over-length and unparsable records");
  cfilter->add_option("corpus", cf_in, "input JSONL")->required();
  cfilter->add_option("--max-tokens", cf_max, "length limit")->capture_default_str();
  cfilter->add_option("--tokenizer", cf_tok, "lexical or whitespace")
      ->check(CLI::IsMember({"lexical", "whitespace"}))
      ->capture_default_str();
  cfilter->add_option("--out", cf_out, "kept records (default stdout)");

  std::string cs_in, cs_tok = "lexical";
  std::size_t cs_max = 4096;
  auto* cstats = corpus->add_subcommand("stats", "Curate, then print min/mean/max statistics");
  cstats->add_option("corpus", cs_in, "input JSONL")->required();
  cstats->add_option("--max-tokens", cs_max, "length limit")->capture_default_str();
  cstats->add_option("--tokenizer", cs_tok, "lexical or whitespace")
      ->check(CLI::IsMember({"lexical", "whitespace"}))
      ->capture_default_str();

  std::string cm_in, cm_out, cm_kind;
  std::uint64_t cm_seed = 0;
  auto* cmutate = corpus->add_subcommand("mutate", "Apply a seeded mutation to every record");
  cmutate->add_option("corpus", cm_in, "input JSONL")->required();
  cmutate->add_option("--kind", cm_kind, "reorder, rename or constants")
      ->required()
      ->check(CLI::IsMember({"reorder", "rename", "constants"}));
  cmutate->add_option("--seed", cm_seed, "RNG seed")->capture_default_str();
  cmutate->add_option("--out", cm_out, "mutated records (default stdout)");

  // serve
  bool sv_stdio = false;
  std::string sv_http;
  std::int64_t sv_timeout = 5000;
  std::size_t sv_max_body = std::size_t{8} << 20;
  auto* serve = app.add_subcommand("serve", "Run the reward service");
  auto* sv_stdio_opt = serve->add_flag("--stdio", sv_stdio, "JSON lines on stdin/stdout");
  auto* sv_http_opt = serve->add_option("--http", sv_http, "HOST:PORT");
  sv_stdio_opt->excludes(sv_http_opt);
  serve->add_option("--timeout-ms", sv_timeout, "per-request time limit")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  serve->add_option("--max-body-bytes", sv_max_body, "request size limit")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (parse->parsed()) {
      const std::string src = read_file(parse_file_arg);
      if (parse_emit == "tokens") {
        std::vector<vsr::Token> toks;
        try {
          toks = vsr::lex(src);
        } catch (const vsr::LexError& e) {
          throw vsr::FormatError(parse_file_arg + ": " + vsr::format_diagnostic(e.diagnostic()));
        }
        for (const auto& t : toks) {
          std::cout << vsr::to_string(t.kind) << '\t' << t.text << '\t' << t.span.start << '\t'
                    << t.span.end << '\n';
        }
      } else {
        std::cout << vsr::dump(parse_file(parse_file_arg));
      }
    } else if (clean->parsed()) {
      const vsr::CleanNode t = vsr::clean(parse_file(clean_file_arg));
      if (clean_emit == "text") {
        std::cout << vsr::serialize(t) << '\n';
      } else {
        const vsr::TreeStats s = vsr::stats(t);
        std::cout << "depth\t" << s.depth << "\nnode_count\t" << s.node_count
                  << "\nmean_branching\t" << fixed6(s.mean_branching) << '\n';
      }
    } else if (sim->parsed()) {
      const vsr::SimOptions opts = sim_options();
      const vsr::CleanNode ref = vsr::clean(parse_file(sim_ref));
      const vsr::CleanNode gen = vsr::clean(parse_file(sim_gen));
      if (sim_trace && sim_mode == "ast") {
        vsr::MatchTrace trace;
        const vsr::SimScore s = vsr::sim_ast(gen, ref, trace, opts);
        std::cout << fixed6(s.value) << '\n';
        for (const auto& step : trace) {
          std::cout << vsr::format_path(step.left) << '\t' << vsr::format_path(step.right) << '\t'
                    << fixed6(step.score) << '\n';
        }
      } else {
        if (sim_trace) std::cerr << "note: --trace applies to --mode ast only\n";
        const auto mode = *vsr::sim_mode_from_string(sim_mode);
        std::cout << fixed6(vsr::similarity(gen, ref, mode, opts).value) << '\n';
      }
    } else if (rw->parsed()) {
      const vsr::SimOptions opts = sim_options();
      const std::string ref = read_file(rw_ref);
      const std::string gen = read_file(rw_gen);
      const vsr::RewardOutcome r =
          vsr::reward(gen, ref, *vsr::sim_mode_from_string(rw_mode), opts);
      std::cout << vsr::to_string(r.status) << '\t' << (r.sim ? fixed6(r.sim->value) : "-") << '\t'
                << fixed6(r.reward) << '\n';
    } else if (passk->parsed()) {
      std::cout << fixed6(vsr::pass_at_k(pk_n, pk_c, pk_k)) << '\n';
    } else if (report->parsed()) {
      const auto outcomes = vsr::read_outcomes(rep_file);
      for (const auto& metric : rep_metrics) {
        for (std::size_t k : rep_ks) {
          const double v = metric == "pass" ? vsr::aggregate_pass_at_k(outcomes, k)
                                            : vsr::hit_at_k(outcomes, k, rep_seed);
          std::cout << metric << '@' << k << '\t' << fixed6(v) << '\n';
        }
      }
    } else if (cfilter->parsed()) {
      const auto records = vsr::ingest(cf_in);
      const auto result = vsr::curate(records, filter_config(cf_max, cf_tok));
      std::ostringstream kept;
      vsr::write_jsonl(result.kept, kept);
      write_output(cf_out, kept.str());
      for (const auto& d : result.dropped) {
        std::cerr << "dropped\t" << d.record.id << '\t' << vsr::to_string(d.reason) << '\t'
                  << d.detail << '\n';
      }
      std::cerr << "kept " << result.kept.size() << ", dropped " << result.dropped.size() << '\n';
    } else if (cstats->parsed()) {
      const auto result = vsr::curate(vsr::ingest(cs_in), filter_config(cs_max, cs_tok));
      const auto s = vsr::corpus_stats(result.kept);
      std::cout << "records\t" << s.records << '\n' << vsr::format_stats_tsv(s);
    } else if (cmutate->parsed()) {
      const auto records = vsr::ingest(cm_in);
      const vsr::MutationSpec spec{*vsr::mutation_kind_from_string(cm_kind), cm_seed};
      std::vector<vsr::CorpusRecord> out;
      for (const auto& r : records) {
        try {
          vsr::CorpusRecord m = r;
          m.code = vsr::mutate(r.code, spec);
          out.push_back(std::move(m));
        } catch (const vsr::MutationError& e) {
          std::cerr << "skipped\t" << r.id << '\t' << e.what() << '\n';
        }
      }
      std::ostringstream text;
      vsr::write_jsonl(out, text);
      write_output(cm_out, text.str());
    } else if (serve->parsed()) {
      vsr::service::Config cfg;
      cfg.timeout = std::chrono::milliseconds(sv_timeout);
      cfg.max_body_bytes = sv_max_body;
      cfg.depth_limit = depth_limit_from_env();
      if (sv_stdio) {
        std::ios::sync_with_stdio(false);
        vsr::service::serve_stdio(std::cin, std::cout, cfg);
      } else if (!sv_http.empty()) {
        const auto [host, port] = split_host_port(sv_http);
        vsr::service::HttpServer server(cfg);
        const int bound = server.bind(host, port);
        if (bound < 0) throw vsr::Error("cannot bind " + sv_http);
        std::cerr << "listening on " << host << ':' << bound << std::endl;
        if (!server.listen()) throw vsr::Error("server stopped unexpectedly");
      } else {
        throw UsageError("serve needs --stdio or --http HOST:PORT");
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const vsr::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}
