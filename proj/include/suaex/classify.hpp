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

// Category attribution over annotated sentences, and the per-category
// aspect lexicon built from each sentence's most attended token.

#ifndef SUAEX_CLASSIFY_HPP_
#define SUAEX_CLASSIFY_HPP_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "suaex/attention.hpp"

namespace suaex {

// Sentence score = max or mean of the token similarities. Similarities
// rather than attention weights are aggregated: weights are normalized per
// category and are not comparable across categories.
enum class AggregationMode { kMax, kMean };

inline constexpr const char* kUnclassifiableLabel = "__unclassifiable__";

struct CategoryAssignment {
  std::string sentence_id;
  // Absent for unclassifiable sentences.
  std::optional<std::string> category;
  double score = 0.0;
  std::vector<std::pair<std::string, double>> per_category_scores;
  bool unclassifiable = false;
};

// Throws UnknownCategory and UnclassifiableSentence.
double sentence_score(const AnnotatedSentence& annotated, const std::string& category,
                      AggregationMode agg);

// Argmax of sentence_score over group_order (every entry must be annotated);
// exact ties go to the earlier category. An empty group_order means the
// annotation's own category order.
CategoryAssignment assign_category(const AnnotatedSentence& annotated,
                                   AggregationMode agg,
                                   std::span<const std::string> group_order = {});

std::vector<CategoryAssignment> assign_categories(
    std::span<const AnnotatedSentence> annotated, AggregationMode agg,
    std::span<const std::string> group_order = {});

// How an aspect word is credited each time it is a sentence's most attended
// token: by that attention value, or by one.
enum class AspectWeight { kAttentionMass, kFrequency };

struct AspectTerm {
  std::string word;
  double weight;

  bool operator==(const AspectTerm&) const = default;
};

struct AspectLexicon {
  // In category order; terms by weight descending, ties by word.
  std::vector<std::pair<std::string, std::vector<AspectTerm>>> categories;

  const std::vector<AspectTerm>* find(const std::string& category) const;
};

// For every classified sentence, credits its highest-attention token under
// the assigned category (first position on ties), then keeps the top_n words
// per category. Assignments are matched to sentences by id.
AspectLexicon extract_aspects(std::span<const AnnotatedSentence> annotated,
                              std::span<const CategoryAssignment> assignments,
                              std::size_t top_n,
                              AspectWeight weighting = AspectWeight::kAttentionMass);

// Output2: sentence_id<TAB>category<TAB>score<TAB>cat1=s1;cat2=s2;...
void write_output2(std::ostream& out, std::span<const CategoryAssignment> assignments);
std::vector<CategoryAssignment> read_output2(std::istream& in);

// category<TAB>rank<TAB>word<TAB>weight, ranks starting at 1.
void write_lexicon(std::ostream& out, const AspectLexicon& lexicon);

}  // namespace suaex

#endif  // SUAEX_CLASSIFY_HPP_
