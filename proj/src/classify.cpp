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

#include "suaex/classify.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <unordered_map>

#include "format_util.hpp"

namespace suaex {

double sentence_score(const AnnotatedSentence& annotated, const std::string& category,
                      AggregationMode agg) {
  const CategoryAttention& cat = annotated.at(category);
  if (annotated.unclassifiable || cat.oov_mask.all()) {
    throw UnclassifiableSentence(annotated.sentence.id);
  }
  double best = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  int n = 0;
  for (Eigen::Index t = 0; t < cat.similarities.size(); ++t) {
    if (cat.oov_mask(t)) continue;
    best = std::max(best, cat.similarities(t));
    sum += cat.similarities(t);
    ++n;
  }
  return agg == AggregationMode::kMax ? best : sum / n;
}

CategoryAssignment assign_category(const AnnotatedSentence& annotated,
                                   AggregationMode agg,
                                   std::span<const std::string> group_order) {
  CategoryAssignment result;
  result.sentence_id = annotated.sentence.id;
  std::vector<std::string> order;
  if (group_order.empty()) {
    for (const auto& c : annotated.per_category) order.push_back(c.category);
  } else {
    order.assign(group_order.begin(), group_order.end());
  }
  for (const auto& c : order) annotated.at(c);

  if (annotated.unclassifiable) {
    result.unclassifiable = true;
    result.score = std::numeric_limits<double>::quiet_NaN();
    return result;
  }
  for (const auto& c : order) {
    double s = sentence_score(annotated, c, agg);
    result.per_category_scores.emplace_back(c, s);
    if (!result.category || s > result.score) {
      result.category = c;
      result.score = s;
    }
  }
  return result;
}

std::vector<CategoryAssignment> assign_categories(
    std::span<const AnnotatedSentence> annotated, AggregationMode agg,
    std::span<const std::string> group_order) {
  std::vector<CategoryAssignment> out;
  out.reserve(annotated.size());
  for (const auto& a : annotated) out.push_back(assign_category(a, agg, group_order));
  return out;
}

const std::vector<AspectTerm>* AspectLexicon::find(const std::string& category) const {
  for (const auto& [name, terms] : categories) {
    if (name == category) return &terms;
  }
  return nullptr;
}

AspectLexicon extract_aspects(std::span<const AnnotatedSentence> annotated,
                              std::span<const CategoryAssignment> assignments,
                              std::size_t top_n, AspectWeight weighting) {
  std::unordered_map<std::string, const CategoryAssignment*> by_id;
  for (const auto& a : assignments) by_id.emplace(a.sentence_id, &a);

  std::vector<std::string> order;
  std::unordered_map<std::string, std::map<std::string, double>> credit;
  auto note_category = [&](const std::string& c) {
    if (credit.try_emplace(c).second) order.push_back(c);
  };

  for (const auto& sentence : annotated) {
    for (const auto& c : sentence.per_category) note_category(c.category);
    auto it = by_id.find(sentence.sentence.id);
    if (it == by_id.end()) {
      throw InvalidArgument("no assignment for sentence " + sentence.sentence.id);
    }
    const CategoryAssignment& assignment = *it->second;
    if (assignment.unclassifiable || !assignment.category) continue;
    const CategoryAttention& cat = sentence.at(*assignment.category);

    Eigen::Index best = -1;
    for (Eigen::Index t = 0; t < cat.attentions.size(); ++t) {
      if (cat.oov_mask(t)) continue;
      if (best < 0 || cat.attentions(t) > cat.attentions(best)) best = t;
    }
    if (best < 0) continue;
    double w = weighting == AspectWeight::kAttentionMass ? cat.attentions(best) : 1.0;
    credit[*assignment.category][sentence.sentence.tokens[best]] += w;
  }

  AspectLexicon lexicon;
  for (const auto& category : order) {
    std::vector<AspectTerm> terms;
    for (const auto& [word, weight] : credit[category]) terms.push_back({word, weight});
    std::stable_sort(terms.begin(), terms.end(), [](const AspectTerm& a, const AspectTerm& b) {
      if (a.weight != b.weight) return a.weight > b.weight;
      return a.word < b.word;
    });
    if (terms.size() > top_n) terms.resize(top_n);
    lexicon.categories.emplace_back(category, std::move(terms));
  }
  return lexicon;
}

void write_output2(std::ostream& out, std::span<const CategoryAssignment> assignments) {
  for (const auto& a : assignments) {
    out << a.sentence_id << '\t';
    if (a.unclassifiable || !a.category) {
      out << kUnclassifiableLabel << "\tnan\t\n";
      continue;
    }
    out << *a.category << '\t' << format_fixed6(a.score) << '\t';
    for (std::size_t i = 0; i < a.per_category_scores.size(); ++i) {
      if (i > 0) out << ';';
      out << a.per_category_scores[i].first << '=' << format_fixed6(a.per_category_scores[i].second);
    }
    out << '\n';
  }
}

std::vector<CategoryAssignment> read_output2(std::istream& in) {
  std::vector<CategoryAssignment> result;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split(line, '\t');
    if (fields.size() != 4) {
      throw MalformedFile("Output2 line " + std::to_string(line_number) +
                          " must have 4 tab-separated fields");
    }
    CategoryAssignment a;
    a.sentence_id = std::string(fields[0]);
    if (fields[1] == kUnclassifiableLabel) {
      a.unclassifiable = true;
      a.score = std::numeric_limits<double>::quiet_NaN();
      result.push_back(std::move(a));
      continue;
    }
    a.category = std::string(fields[1]);
    if (!parse_double(fields[2], a.score)) {
      throw MalformedFile("bad score on Output2 line " + std::to_string(line_number));
    }
    if (!fields[3].empty()) {
      for (std::string_view item : split(fields[3], ';')) {
        std::size_t eq = item.rfind('=');
        double s;
        if (eq == std::string_view::npos || !parse_double(item.substr(eq + 1), s)) {
          throw MalformedFile("bad category score on Output2 line " +
                              std::to_string(line_number));
        }
        a.per_category_scores.emplace_back(std::string(item.substr(0, eq)), s);
      }
    }
    result.push_back(std::move(a));
  }
  return result;
}

void write_lexicon(std::ostream& out, const AspectLexicon& lexicon) {
  for (const auto& [category, terms] : lexicon.categories) {
    for (std::size_t r = 0; r < terms.size(); ++r) {
      out << category << '\t' << r + 1 << '\t' << terms[r].word << '\t'
          << format_fixed6(terms[r].weight) << '\n';
    }
  }
}

}  // namespace suaex
