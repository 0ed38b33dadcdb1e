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

#include "suaex/eval.hpp"

#include <algorithm>
#include <ostream>
#include <unordered_map>

#include "format_util.hpp"

namespace suaex {

bool LabelSpace::is_category(const std::string& label) const {
  return std::find(categories.begin(), categories.end(), label) != categories.end();
}

bool LabelSpace::is_gold_label(const std::string& label) const {
  if (is_category(label)) return true;
  return std::any_of(unions.begin(), unions.end(),
                     [&](const auto& u) { return u.first == label; });
}

bool LabelSpace::matches(const std::string& predicted, const std::string& gold) const {
  if (predicted == gold) return true;
  for (const auto& [name, members] : unions) {
    if (name == gold) {
      return std::find(members.begin(), members.end(), predicted) != members.end();
    }
  }
  return false;
}

const CategoryCounts& ConfusionCounts::at(const std::string& category) const {
  for (const auto& c : per_category) {
    if (c.category == category) return c;
  }
  throw UnknownCategory(category);
}

ConfusionCounts confusion_counts(std::span<const CategoryAssignment> predictions,
                                 std::span<const Sentence> gold,
                                 const LabelSpace& labels) {
  ConfusionCounts counts;
  std::unordered_map<std::string, std::size_t> slot;
  auto add_label = [&](const std::string& label) {
    if (slot.emplace(label, counts.per_category.size()).second) {
      counts.per_category.push_back({label, 0, 0, 0});
    }
  };
  for (const auto& c : labels.categories) add_label(c);
  for (const auto& u : labels.unions) add_label(u.first);

  std::unordered_map<std::string, const CategoryAssignment*> by_id;
  for (const auto& p : predictions) {
    if (!by_id.emplace(p.sentence_id, &p).second) {
      throw InvalidArgument("duplicate prediction for sentence " + p.sentence_id);
    }
  }

  for (const auto& s : gold) {
    if (!s.gold_category || !labels.is_gold_label(*s.gold_category)) {
      throw UnknownGoldLabel("sentence " + s.id + " has gold label '" +
                             s.gold_category.value_or("") + "'");
    }
    auto it = by_id.find(s.id);
    if (it == by_id.end()) throw MissingPrediction(s.id);
    const CategoryAssignment& p = *it->second;
    const std::string& g = *s.gold_category;
    ++counts.gold_sentences;
    if (p.unclassifiable || !p.category) {
      ++counts.per_category[slot.at(g)].fn;
      continue;
    }
    if (!labels.is_category(*p.category)) {
      throw UnknownCategory("predicted label '" + *p.category + "' for sentence " + s.id);
    }
    ++counts.classified_sentences;
    if (labels.matches(*p.category, g)) {
      ++counts.per_category[slot.at(g)].tp;
    } else {
      ++counts.per_category[slot.at(*p.category)].fp;
      ++counts.per_category[slot.at(g)].fn;
    }
  }
  return counts;
}

double f1_score(double precision, double recall) {
  if (precision + recall <= 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

MetricRow precision_recall_f1(long long tp, long long fp, long long fn) {
  MetricRow row;
  if (tp + fp > 0) {
    row.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  } else {
    row.precision_degenerate = true;
  }
  if (tp + fn > 0) {
    row.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
  } else {
    row.recall_degenerate = true;
  }
  row.f1 = f1_score(row.precision, row.recall);
  return row;
}

MetricRow macro_average(std::span<const MetricRow> rows) {
  if (rows.empty()) throw EmptyInput("macro average of no rows");
  MetricRow mean;
  for (const auto& r : rows) {
    mean.precision += r.precision;
    mean.recall += r.recall;
    mean.f1 += r.f1;
  }
  const double n = static_cast<double>(rows.size());
  mean.precision /= n;
  mean.recall /= n;
  mean.f1 /= n;
  return mean;
}

EvalReport evaluation_report(const ConfusionCounts& counts) {
  EvalReport report;
  std::vector<MetricRow> rows;
  for (const auto& c : counts.per_category) {
    MetricRow r = precision_recall_f1(c);
    report.rows.emplace_back(c.category, r);
    rows.push_back(r);
  }
  report.macro = macro_average(rows);
  return report;
}

void write_eval_report(std::ostream& out, const EvalReport& report) {
  out << "category\tP\tR\tF1\n";
  auto row = [&](const std::string& name, const MetricRow& m) {
    out << name << '\t' << format_fixed6(m.precision) << '\t' << format_fixed6(m.recall)
        << '\t' << format_fixed6(m.f1) << '\n';
  };
  for (const auto& [name, m] : report.rows) row(name, m);
  row("__macro__", report.macro);
}

void write_plot_data(std::ostream& out, const EvalReport& report) {
  out << "category,precision,recall,f1\n";
  auto row = [&](const std::string& name, const MetricRow& m) {
    out << name << ',' << format_fixed6(m.precision) << ',' << format_fixed6(m.recall) << ','
        << format_fixed6(m.f1) << '\n';
  };
  for (const auto& [name, m] : report.rows) row(name, m);
  row("__macro__", report.macro);
}

namespace {

TimingRow make_row(std::string stage, double seconds, std::size_t sentences) {
  TimingRow row{std::move(stage), std::max(0.0, seconds), sentences, std::nullopt};
  if (row.seconds > 0.0) row.throughput = static_cast<double>(sentences) / row.seconds;
  return row;
}

}  // namespace

TimingReport runtime_report(std::span<const StageTiming> timings) {
  TimingReport report;
  double attention_seconds = 0.0;
  std::size_t attention_sentences = 0;
  for (const auto& t : timings) {
    report.stages.push_back(make_row(t.stage, t.seconds, t.sentences));
    if (t.stage == "annotate" || t.stage == "classify") {
      attention_seconds += std::max(0.0, t.seconds);
      // Both stages see the same sentences; count them once.
      attention_sentences = std::max(attention_sentences, t.sentences);
    }
  }
  report.attention = make_row(kAttentionStage, attention_seconds, attention_sentences);
  return report;
}

void write_timing_report(std::ostream& out, const TimingReport& report) {
  out << "stage\tseconds\tsentences\tthroughput\n";
  auto row = [&](const TimingRow& r) {
    out << r.stage << '\t' << format_fixed6(r.seconds) << '\t' << r.sentences << '\t'
        << (r.throughput ? format_fixed6(*r.throughput) : std::string("undefined")) << '\n';
  };
  for (const auto& r : report.stages) row(r);
  row(report.attention);
}

}  // namespace suaex
