// Copyright 2026 The SUAEx-cpp Authors.
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

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "suaex/eval.hpp"
#include "synth/synthetic.hpp"

namespace suaex {
namespace {

CategoryAssignment predicted(const std::string& id, const std::string& category) {
  CategoryAssignment a;
  a.sentence_id = id;
  a.category = category;
  return a;
}

CategoryAssignment unclassifiable(const std::string& id) {
  CategoryAssignment a;
  a.sentence_id = id;
  a.unclassifiable = true;
  return a;
}

Sentence gold(const std::string& id, const std::string& label) {
  Sentence s;
  s.id = id;
  s.gold_category = label;
  return s;
}

const LabelSpace kAB{{"A", "B"}, {}};

TEST(ConfusionCounts, Correct) {
  std::vector<CategoryAssignment> p = {predicted("1", "A")};
  std::vector<Sentence> g = {gold("1", "A")};
  auto c = confusion_counts(p, g, kAB);
  EXPECT_EQ(c.at("A"), (CategoryCounts{"A", 1, 0, 0}));
  EXPECT_EQ(c.at("B"), (CategoryCounts{"B", 0, 0, 0}));
}

TEST(ConfusionCounts, Wrong) {
  std::vector<CategoryAssignment> p = {predicted("1", "A")};
  std::vector<Sentence> g = {gold("1", "B")};
  auto c = confusion_counts(p, g, kAB);
  EXPECT_EQ(c.at("A"), (CategoryCounts{"A", 0, 1, 0}));
  EXPECT_EQ(c.at("B"), (CategoryCounts{"B", 0, 0, 1}));
}

TEST(ConfusionCounts, UnclassifiableIsMissForGoldOnly) {
  std::vector<CategoryAssignment> p = {unclassifiable("1")};
  std::vector<Sentence> g = {gold("1", "B")};
  auto c = confusion_counts(p, g, kAB);
  EXPECT_EQ(c.at("A"), (CategoryCounts{"A", 0, 0, 0}));
  EXPECT_EQ(c.at("B"), (CategoryCounts{"B", 0, 0, 1}));
  EXPECT_EQ(c.gold_sentences, 1u);
  EXPECT_EQ(c.classified_sentences, 0u);
}

TEST(ConfusionCounts, Errors) {
  std::vector<CategoryAssignment> p = {predicted("1", "A")};
  std::vector<Sentence> unknown = {gold("1", "C")};
  std::vector<Sentence> missing = {gold("2", "A")};
  EXPECT_THROW(confusion_counts(p, unknown, kAB), UnknownGoldLabel);
  EXPECT_THROW(confusion_counts(p, missing, kAB), MissingPrediction);
}

TEST(ConfusionCounts, LabelUnions) {
  LabelSpace labels{{"taste", "smell", "look"}, {{"taste+smell", {"taste", "smell"}}}};
  std::vector<CategoryAssignment> p = {predicted("1", "smell"), predicted("2", "look")};
  std::vector<Sentence> g = {gold("1", "taste+smell"), gold("2", "taste+smell")};
  auto c = confusion_counts(p, g, labels);
  EXPECT_EQ(c.at("taste+smell"), (CategoryCounts{"taste+smell", 1, 0, 1}));
  EXPECT_EQ(c.at("look"), (CategoryCounts{"look", 0, 1, 0}));
  EXPECT_EQ(c.at("smell"), (CategoryCounts{"smell", 0, 0, 0}));
}

// Plain re-tally: walk the pairs once and bump counters in a map.
std::map<std::string, std::array<long long, 3>> tally(const std::vector<std::string>& pred,
                                                      const std::vector<std::string>& gold) {
  std::map<std::string, std::array<long long, 3>> t;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (pred[i] == gold[i]) {
      t[gold[i]][0]++;
    } else {
      t[pred[i]][1]++;
      t[gold[i]][2]++;
    }
  }
  return t;
}

TEST(ConfusionCounts, MatchesIndependentTally) {
  const std::vector<std::string> cats = {"A", "B", "C"};
  synth::SplitMix64 rng(2024);
  std::vector<std::string> p_labels;
  std::vector<std::string> g_labels;
  std::vector<CategoryAssignment> p;
  std::vector<Sentence> g;
  for (int i = 0; i < 200; ++i) {
    p_labels.push_back(rng.pick(cats));
    g_labels.push_back(rng.pick(cats));
    p.push_back(predicted(std::to_string(i), p_labels.back()));
    g.push_back(gold(std::to_string(i), g_labels.back()));
  }
  auto counts = confusion_counts(p, g, LabelSpace{cats, {}});
  auto expected = tally(p_labels, g_labels);
  long long tp_sum = 0;
  for (const auto& c : cats) {
    const auto& e = expected[c];
    EXPECT_EQ(counts.at(c), (CategoryCounts{c, e[0], e[1], e[2]}));
    tp_sum += e[0];
    auto row = precision_recall_f1(counts.at(c));
    EXPECT_EQ(row.precision, static_cast<double>(e[0]) / static_cast<double>(e[0] + e[1]));
    EXPECT_EQ(row.recall, static_cast<double>(e[0]) / static_cast<double>(e[0] + e[2]));
  }
  long long fp_sum = 0;
  long long fn_sum = 0;
  for (const auto& c : counts.per_category) {
    fp_sum += c.fp;
    fn_sum += c.fn;
  }
  EXPECT_EQ(tp_sum + fp_sum, 200);
  EXPECT_EQ(tp_sum + fn_sum, 200);
}

TEST(ConfusionCounts, PermutationInvariant) {
  const std::vector<std::string> cats = {"A", "B", "C"};
  synth::SplitMix64 rng(7);
  std::vector<CategoryAssignment> p;
  std::vector<Sentence> g;
  for (int i = 0; i < 100; ++i) {
    p.push_back(predicted(std::to_string(i), rng.pick(cats)));
    g.push_back(gold(std::to_string(i), rng.pick(cats)));
  }
  auto before = confusion_counts(p, g, LabelSpace{cats, {}});
  std::reverse(p.begin(), p.end());
  std::rotate(g.begin(), g.begin() + 37, g.end());
  auto after = confusion_counts(p, g, LabelSpace{cats, {}});
  EXPECT_EQ(before.per_category, after.per_category);
}

TEST(ConfusionCounts, FixingAPredictionNeverLowersRecall) {
  const std::vector<std::string> cats = {"A", "B", "C"};
  synth::SplitMix64 rng(8);
  std::vector<CategoryAssignment> p;
  std::vector<Sentence> g;
  for (int i = 0; i < 60; ++i) {
    p.push_back(predicted(std::to_string(i), rng.pick(cats)));
    g.push_back(gold(std::to_string(i), rng.pick(cats)));
  }
  LabelSpace labels{cats, {}};
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (*p[i].category == *g[i].gold_category) continue;
    auto before = precision_recall_f1(confusion_counts(p, g, labels).at(*g[i].gold_category));
    auto fixed = p;
    fixed[i].category = g[i].gold_category;
    auto after = precision_recall_f1(confusion_counts(fixed, g, labels).at(*g[i].gold_category));
    EXPECT_GT(after.recall, before.recall);
    EXPECT_GE(after.precision, before.precision);
  }
}

TEST(Metrics, Examples) {
  auto r = precision_recall_f1(9, 1, 1);
  EXPECT_NEAR(r.precision, 0.9, 1e-15);
  EXPECT_NEAR(r.recall, 0.9, 1e-15);
  EXPECT_NEAR(r.f1, 0.9, 1e-15);
  EXPECT_FALSE(r.precision_degenerate || r.recall_degenerate);

  auto z = precision_recall_f1(0, 0, 0);
  EXPECT_EQ(z.precision, 0.0);
  EXPECT_EQ(z.recall, 0.0);
  EXPECT_EQ(z.f1, 0.0);
  EXPECT_TRUE(z.precision_degenerate);
  EXPECT_TRUE(z.recall_degenerate);
}

TEST(Metrics, PublishedFoodRow) {
  // A published row: P = 0.917, R = 0.900, printed F1 = 0.908.
  EXPECT_NEAR(f1_score(0.917, 0.900), 0.908, 0.002);
}

TEST(Metrics, MacroAverage) {
  MetricRow r{0.3, 0.6, 0.4, false, false};
  std::vector<MetricRow> same = {r, r, r};
  auto m = macro_average(same);
  EXPECT_NEAR(m.precision, 0.3, 1e-15);
  EXPECT_NEAR(m.recall, 0.6, 1e-15);
  EXPECT_NEAR(m.f1, 0.4, 1e-15);

  std::vector<MetricRow> pair = {{1, 0, 0, false, false}, {0, 1, 0, false, false}};
  m = macro_average(pair);
  EXPECT_EQ(m.precision, 0.5);
  EXPECT_EQ(m.recall, 0.5);
  EXPECT_EQ(m.f1, 0.0);

  EXPECT_THROW(macro_average(std::vector<MetricRow>{}), EmptyInput);
}

TEST(Metrics, MacroOfPublishedRestaurantRows) {
  std::vector<MetricRow> rows = {{0.953, 0.674, 0.789, false, false},
                                 {0.882, 0.714, 0.789, false, false},
                                 {0.627, 0.967, 0.760, false, false}};
  auto m = macro_average(rows);
  // Column means by hand: 2.462/3, 2.355/3, 2.338/3.
  EXPECT_NEAR(m.precision, 0.821, 5e-4);
  EXPECT_NEAR(m.recall, 0.785, 5e-4);
  EXPECT_NEAR(m.f1, 0.779, 5e-4);
}

TEST(Reports, EvalAndPlotFormats) {
  std::vector<CategoryAssignment> p = {predicted("1", "A"), predicted("2", "A")};
  std::vector<Sentence> g = {gold("1", "A"), gold("2", "B")};
  auto report = evaluation_report(confusion_counts(p, g, kAB));
  std::ostringstream tsv;
  write_eval_report(tsv, report);
  EXPECT_EQ(tsv.str(),
            "category\tP\tR\tF1\n"
            "A\t0.500000\t1.000000\t0.666667\n"
            "B\t0.000000\t0.000000\t0.000000\n"
            "__macro__\t0.250000\t0.500000\t0.333333\n");
  std::ostringstream csv;
  write_plot_data(csv, report);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "category,precision,recall,f1");
}

TEST(Timing, ZeroDurationHasUndefinedThroughput) {
  std::vector<StageTiming> t = {{"preprocess", 0.0, 0}, {"annotate", 2.0, 3328},
                                {"classify", 0.5, 3328}};
  auto report = runtime_report(t);
  EXPECT_FALSE(report.stages[0].throughput.has_value());
  ASSERT_TRUE(report.stages[1].throughput.has_value());
  EXPECT_EQ(*report.stages[1].throughput, 1664.0);
  EXPECT_EQ(report.attention.stage, kAttentionStage);
  EXPECT_EQ(report.attention.sentences, 3328u);
  EXPECT_EQ(report.attention.seconds, 2.5);

  std::ostringstream out;
  write_timing_report(out, report);
  EXPECT_NE(out.str().find("preprocess\t0.000000\t0\tundefined\n"), std::string::npos);
  EXPECT_EQ(out.str().find("inf\n"), std::string::npos);
}

TEST(Timing, CountsStableAcrossRuns) {
  auto run = [] {
    StageClock clock;
    volatile double sink = 0;
    for (int i = 0; i < 10000; ++i) sink = sink + i;
    std::vector<StageTiming> t = {{"annotate", clock.seconds(), 500}};
    return runtime_report(t);
  };
  auto a = run();
  auto b = run();
  EXPECT_EQ(a.stages[0].sentences, b.stages[0].sentences);
  EXPECT_GE(a.stages[0].seconds, 0.0);
}

}  // namespace
}  // namespace suaex
