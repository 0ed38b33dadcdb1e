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

// Single-label evaluation (precision / recall / F1 per category and macro
// averaged) and wall-clock stage timing.

#ifndef SUAEX_EVAL_HPP_
#define SUAEX_EVAL_HPP_

#include <chrono>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "suaex/classify.hpp"
#include "suaex/corpus.hpp"

namespace suaex {

// Gold labels that may be predicted (`categories`) plus union labels: a gold
// union label is matched by a prediction of any of its members.
struct LabelSpace {
  std::vector<std::string> categories;
  std::vector<std::pair<std::string, std::vector<std::string>>> unions;

  bool is_category(const std::string& label) const;
  bool is_gold_label(const std::string& label) const;
  bool matches(const std::string& predicted, const std::string& gold) const;
};

struct CategoryCounts {
  std::string category;
  long long tp = 0;
  long long fp = 0;
  long long fn = 0;

  bool operator==(const CategoryCounts&) const = default;
};

struct ConfusionCounts {
  // Categories first, then union labels, in LabelSpace order.
  std::vector<CategoryCounts> per_category;
  std::size_t gold_sentences = 0;
  std::size_t classified_sentences = 0;

  const CategoryCounts& at(const std::string& category) const;
};

// Joins predictions to gold sentences by id. An unclassifiable prediction is
// a false negative for the gold label and a false positive for nothing.
// Throws MissingPrediction, UnknownGoldLabel, and UnknownCategory for a
// predicted label outside the label space.
ConfusionCounts confusion_counts(std::span<const CategoryAssignment> predictions,
                                 std::span<const Sentence> gold,
                                 const LabelSpace& labels);

struct MetricRow {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  // Set when the denominator was zero and the value defaulted to 0.
  bool precision_degenerate = false;
  bool recall_degenerate = false;
};

// 2PR / (P + R), or 0 when P + R = 0.
double f1_score(double precision, double recall);

MetricRow precision_recall_f1(long long tp, long long fp, long long fn);
inline MetricRow precision_recall_f1(const CategoryCounts& c) {
  return precision_recall_f1(c.tp, c.fp, c.fn);
}

// Unweighted mean of each column; the F1 column is the mean of the F1 values.
// Throws EmptyInput.
MetricRow macro_average(std::span<const MetricRow> rows);

struct EvalReport {
  std::vector<std::pair<std::string, MetricRow>> rows;
  MetricRow macro;
};

// Macro average over the per-label rows.
EvalReport evaluation_report(const ConfusionCounts& counts);

// category<TAB>P<TAB>R<TAB>F1, closed by a __macro__ row.
void write_eval_report(std::ostream& out, const EvalReport& report);
// CSV for bar charts of the per-category and macro scores.
void write_plot_data(std::ostream& out, const EvalReport& report);

// ---------------------------------------------------------------------------
// Timing

struct StageTiming {
  std::string stage;
  double seconds = 0.0;
  std::size_t sentences = 0;
};

struct TimingRow {
  std::string stage;
  double seconds = 0.0;
  std::size_t sentences = 0;
  // sentences / seconds; undefined for a zero duration.
  std::optional<double> throughput;
};

struct TimingReport {
  std::vector<TimingRow> stages;
  // annotate + classify: the similarity-as-attention cost, apart from
  // training and I/O.
  TimingRow attention;
};

inline constexpr const char* kAttentionStage = "annotate+classify";

TimingReport runtime_report(std::span<const StageTiming> timings);

// stage<TAB>seconds<TAB>sentences<TAB>throughput
void write_timing_report(std::ostream& out, const TimingReport& report);

// Measures one stage with the monotonic clock.
class StageClock {
 public:
  StageClock() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace suaex

#endif  // SUAEX_EVAL_HPP_
