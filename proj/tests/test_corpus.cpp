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

#include <gtest/gtest.h>

#include <map>
#include <sstream>
#include <string>

#include "support/test_data.hpp"
#include "vsr/corpus.hpp"

namespace {

using vsr::CorpusRecord;
using vsr::DropReason;

std::vector<CorpusRecord> from_text(const std::string& text) {
  std::istringstream in(text);
  return vsr::ingest(in);
}

TEST(Ingest, ValidFileKeepsOrder) {
  const auto recs = from_text(
      "{\"id\":\"a\",\"spec\":\"s1\",\"code\":\"c1\"}\n"
      "{\"id\":\"b\",\"spec\":\"s2\",\"code\":\"c2\",\"extra\":1}\n"
      "{\"id\":\"c\",\"spec\":\"s3\",\"code\":\"c3\"}\n");
  ASSERT_EQ(recs.size(), 3u);
  EXPECT_EQ(recs[0].id, "a");
  EXPECT_EQ(recs[1].spec, "s2");
  EXPECT_EQ(recs[2].code, "c3");
}

TEST(Ingest, EmptyFile) { EXPECT_TRUE(from_text("").empty()); }

TEST(Ingest, MissingFieldNamesTheLine) {
  try {
    from_text("{\"id\":\"a\",\"spec\":\"s\",\"code\":\"c\"}\n{\"id\":\"b\",\"spec\":\"s\"}\n");
    FAIL();
  } catch (const vsr::FormatError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("code"), std::string::npos);
  }
}

TEST(Ingest, MalformedAndDuplicate) {
  EXPECT_THROW(from_text("{not json}\n"), vsr::FormatError);
  EXPECT_THROW(from_text("[]\n"), vsr::FormatError);
  EXPECT_THROW(from_text("{\"id\":1,\"spec\":\"s\",\"code\":\"c\"}\n"), vsr::FormatError);
  EXPECT_THROW(from_text("{\"id\":\"a\",\"spec\":\"s\",\"code\":\"c\"}\n"
                         "{\"id\":\"a\",\"spec\":\"t\",\"code\":\"d\"}\n"),
               vsr::FormatError);
  EXPECT_THROW(vsr::ingest(std::string("/nonexistent/corpus.jsonl")), vsr::FormatError);
}

CorpusRecord rec(std::string id, std::string spec, std::string code) {
  CorpusRecord r;
  r.id = std::move(id);
  r.spec = std::move(spec);
  r.code = std::move(code);
  return r;
}

TEST(Curate, Examples) {
  std::string long_spec;
  for (int i = 0; i < 5000; ++i) long_spec += "word ";
  const auto res = vsr::curate({
      rec("long", long_spec, "module m; endmodule"),
      rec("prose", "an inverter", "The output is the inverse of the input."),
      rec("ok", "a wire", "module m(input a, output y); assign y = a; endmodule"),
  });
  ASSERT_EQ(res.kept.size(), 1u);
  EXPECT_EQ(res.kept[0].id, "ok");
  ASSERT_TRUE(res.kept[0].tree.has_value());
  EXPECT_GE(res.kept[0].tree->node_count, 5u);
  ASSERT_EQ(res.dropped.size(), 2u);
  EXPECT_EQ(res.dropped[0].record.id, "long");
  EXPECT_EQ(res.dropped[0].reason, DropReason::Length);
  EXPECT_EQ(res.dropped[1].record.id, "prose");
  EXPECT_EQ(res.dropped[1].reason, DropReason::Unparsable);
}

TEST(Curate, SyntheticTwentyRecordCorpus) {
  const auto records = vsr::ingest(vsr_test::fixture("corpus20.jsonl").string());
  ASSERT_EQ(records.size(), 20u);
  vsr::FilterConfig cfg;
  cfg.max_tokens = 400;
  const auto res = vsr::curate(records, cfg);
  EXPECT_EQ(res.kept.size(), 15u);
  ASSERT_EQ(res.dropped.size(), 5u);
  std::map<std::string, DropReason> reasons;
  for (const auto& d : res.dropped) reasons[d.record.id] = d.reason;
  EXPECT_EQ(reasons, (std::map<std::string, DropReason>{{"long_spec", DropReason::Length},
                                                        {"long_code", DropReason::Length},
                                                        {"long_both", DropReason::Length},
                                                        {"bad_syntax", DropReason::Unparsable},
                                                        {"bad_prose", DropReason::Unparsable}}));
  // Partition preserving input order.
  std::size_t ki = 0, di = 0;
  for (const auto& r : records) {
    if (ki < res.kept.size() && res.kept[ki].id == r.id) {
      ++ki;
    } else {
      ASSERT_LT(di, res.dropped.size());
      EXPECT_EQ(res.dropped[di++].record.id, r.id);
    }
  }
  EXPECT_EQ(ki, res.kept.size());
  EXPECT_EQ(di, res.dropped.size());
}

TEST(Curate, Idempotent) {
  const auto records = vsr::ingest(vsr_test::fixture("corpus20.jsonl").string());
  vsr::FilterConfig cfg;
  cfg.max_tokens = 400;
  const auto once = vsr::curate(records, cfg);
  const auto twice = vsr::curate(once.kept, cfg);
  EXPECT_EQ(twice.kept.size(), once.kept.size());
  EXPECT_TRUE(twice.dropped.empty());
}

TEST(Curate, TokenizerChoice) {
  const std::string code = "module m(input a,output y);assign y=~a;endmodule";
  vsr::FilterConfig cfg;
  cfg.max_tokens = 10;
  EXPECT_EQ(vsr::curate({rec("x", "s", code)}, cfg).dropped.size(), 1u);
  cfg.tokenizer = vsr::Tokenizer::Whitespace;
  EXPECT_EQ(vsr::curate({rec("x", "s", code)}, cfg).kept.size(), 1u);
  cfg.max_tokens = 0;
  EXPECT_THROW(vsr::curate({}, cfg), vsr::DomainError);
}

TEST(Stats, SingleRecordAndDepthRow) {
  CorpusRecord a = rec("a", "x", "");
  a.tree = vsr::TreeStats{5, 40, 2.5};
  a.spec_tokens = 3;
  a.code_tokens = 30;
  const auto s1 = vsr::corpus_stats({a});
  for (const auto& row : s1.rows) {
    EXPECT_EQ(row.min, row.mean) << row.metric;
    EXPECT_EQ(row.max, row.mean) << row.metric;
  }
  CorpusRecord b = a;
  b.id = "b";
  b.tree->depth = 24;
  const auto s2 = vsr::corpus_stats({a, b});
  ASSERT_EQ(s2.rows[2].metric, "depth");
  EXPECT_EQ(s2.rows[2].min, 5.0);
  EXPECT_EQ(s2.rows[2].mean, 14.5);
  EXPECT_EQ(s2.rows[2].max, 24.0);
  EXPECT_THROW(vsr::corpus_stats({}), vsr::DomainError);
  EXPECT_THROW(vsr::corpus_stats({rec("no-tree", "s", "c")}), vsr::DomainError);
}

TEST(Stats, TsvFormat) {
  CorpusRecord a = rec("a", "x", "");
  a.tree = vsr::TreeStats{5, 40, 2.5};
  const std::string tsv = vsr::format_stats_tsv(vsr::corpus_stats({a}));
  EXPECT_EQ(tsv,
            "metric\tmin\tmean\tmax\n"
            "spec_tokens\t0.000000\t0.000000\t0.000000\n"
            "code_tokens\t0.000000\t0.000000\t0.000000\n"
            "depth\t5.000000\t5.000000\t5.000000\n"
            "node_count\t40.000000\t40.000000\t40.000000\n"
            "mean_branching\t2.500000\t2.500000\t2.500000\n");
}

TEST(WriteJsonl, RoundTripsThroughIngest) {
  const auto records = vsr::ingest(vsr_test::fixture("corpus20.jsonl").string());
  std::ostringstream out;
  vsr::write_jsonl(records, out);
  const auto again = from_text(out.str());
  ASSERT_EQ(again.size(), records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    EXPECT_EQ(again[i].id, records[i].id);
    EXPECT_EQ(again[i].spec, records[i].spec);
    EXPECT_EQ(again[i].code, records[i].code);
  }
}

}  // namespace
