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

// Similarity-based attention. Every token of a sentence is scored against a
// group of reference words by cosine similarity in the embedding space, and
// the scores of one group are turned into attention weights with a softmax.
// No parameters are learned.

#ifndef SUAEX_ATTENTION_HPP_
#define SUAEX_ATTENTION_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <cstddef>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include "suaex/corpus.hpp"
#include "suaex/embedding.hpp"
#include "suaex/error.hpp"

namespace suaex {

// A category and the words that stand for it.
struct ReferenceGroup {
  std::string category;
  std::vector<std::string> words;

  bool operator==(const ReferenceGroup&) const = default;
};

// How the words of a multi-word group are combined: cosine against their
// centroid, or the max / mean of the per-word cosines.
enum class GroupCombine { kCentroid, kMax, kMean };

// Direct similarity compares a token with the group alone. Contextual
// similarity compares it with context_weight * group + (1 - context_weight) *
// sentence centroid, so context_weight = 1 reduces to direct similarity.
struct SimilarityMode {
  enum class Kind { kDirect, kContextual };

  Kind kind = Kind::kDirect;
  double context_weight = 0.5;

  static SimilarityMode Direct() { return {Kind::kDirect, 1.0}; }
  static SimilarityMode Contextual(double context_weight) {
    return {Kind::kContextual, context_weight};
  }

  void validate() const {
    if (!(context_weight >= 0.0 && context_weight <= 1.0)) {
      throw InvalidArgument("context_weight must lie in [0, 1]");
    }
  }
};

using TokenMask = Eigen::Array<bool, Eigen::Dynamic, 1>;

// Scores of one sentence against one group. All three are aligned with the
// sentence tokens; OOV positions have similarity -inf and attention 0.
struct CategoryAttention {
  std::string category;
  Eigen::VectorXd similarities;
  Eigen::VectorXd attentions;
  TokenMask oov_mask;
};

struct AnnotatedSentence {
  Sentence sentence;
  // Set when the sentence has no token with a usable vector.
  bool unclassifiable = false;
  // One entry per reference group, in group order.
  std::vector<CategoryAttention> per_category;

  const CategoryAttention* find(const std::string& category) const {
    for (const auto& c : per_category) {
      if (c.category == category) return &c;
    }
    return nullptr;
  }

  const CategoryAttention& at(const std::string& category) const {
    const CategoryAttention* c = find(category);
    if (c == nullptr) throw UnknownCategory(category);
    return *c;
  }
};

// Softmax over the positions where oov_mask is false, computed with the
// maximum subtracted; masked positions get exactly 0. Throws AllTokensOOV when
// every position is masked.
Eigen::VectorXd attention_weights(const Eigen::VectorXd& similarities,
                                  const TokenMask& oov_mask);

// Mean of the in-vocabulary vectors among `words`, in double. Empty when none
// of them is in the vocabulary.
template <typename Scalar>
Eigen::VectorXd mean_vector(const BasicEmbeddingModel<Scalar>& model,
                            std::span<const std::string> words) {
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(model.dimensions());
  int n = 0;
  for (const auto& w : words) {
    auto i = model.find(w);
    if (!i) continue;
    sum += model.row(*i).template cast<double>().transpose();
    ++n;
  }
  if (n == 0) return Eigen::VectorXd();
  return sum / n;
}

// A reference group resolved against a model: the in-vocabulary group word
// vectors and their centroid, ready to score tokens.
template <typename Scalar>
class GroupScorer {
 public:
  GroupScorer(const BasicEmbeddingModel<Scalar>& model, const ReferenceGroup& group,
              SimilarityMode mode, GroupCombine combine)
      : category_(group.category), mode_(mode), combine_(combine) {
    mode_.validate();
    for (const auto& w : group.words) {
      auto i = model.find(w);
      if (!i) continue;
      word_vectors_.push_back(model.row(*i).template cast<double>().transpose());
    }
    if (word_vectors_.empty()) {
      throw EmptyGroupInVocabulary("no reference word of '" + group.category +
                                   "' is in the vocabulary");
    }
    centroid_ = Eigen::VectorXd::Zero(model.dimensions());
    for (const auto& v : word_vectors_) centroid_ += v;
    centroid_ /= static_cast<double>(word_vectors_.size());
  }

  const std::string& category() const { return category_; }
  const Eigen::VectorXd& centroid() const { return centroid_; }

  // `sentence_centroid` is only read in contextual mode. Throws
  // ZeroNormVector when the token or the reference has zero norm.
  template <typename Derived>
  double similarity(const Eigen::MatrixBase<Derived>& token,
                    const Eigen::VectorXd& sentence_centroid) const {
    const bool contextual = mode_.kind == SimilarityMode::Kind::kContextual;
    if (contextual && sentence_centroid.size() != centroid_.size()) {
      throw InvalidArgument("contextual similarity needs a sentence centroid");
    }
    const double lambda = mode_.context_weight;
    auto reference = [&](const Eigen::VectorXd& group_vector) -> Eigen::VectorXd {
      if (!contextual) return group_vector;
      return lambda * group_vector + (1.0 - lambda) * sentence_centroid;
    };
    switch (combine_) {
      case GroupCombine::kCentroid:
        return cosine(token, reference(centroid_));
      case GroupCombine::kMax: {
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& v : word_vectors_) best = std::max(best, cosine(token, reference(v)));
        return best;
      }
      case GroupCombine::kMean: {
        double sum = 0.0;
        for (const auto& v : word_vectors_) sum += cosine(token, reference(v));
        return sum / static_cast<double>(word_vectors_.size());
      }
    }
    return 0.0;
  }

 private:
  std::string category_;
  SimilarityMode mode_;
  GroupCombine combine_;
  std::vector<Eigen::VectorXd> word_vectors_;
  Eigen::VectorXd centroid_;
};

// Similarity of `word` to `group`. In contextual mode the caller supplies the
// sentence centroid (see mean_vector). Throws OutOfVocabulary and
// EmptyGroupInVocabulary.
template <typename Scalar>
double group_similarity(const BasicEmbeddingModel<Scalar>& model,
                        const std::string& word, const ReferenceGroup& group,
                        SimilarityMode mode,
                        const Eigen::VectorXd& sentence_centroid = Eigen::VectorXd(),
                        GroupCombine combine = GroupCombine::kCentroid) {
  auto token = model.vector(word);
  GroupScorer<Scalar> scorer(model, group, mode, combine);
  return scorer.similarity(token, sentence_centroid);
}

// Scores sentences against a fixed list of reference groups. Construction
// resolves every group and throws EmptyGroupInVocabulary for a group with no
// word in the vocabulary; annotate() itself never throws for a sentence.
template <typename Scalar>
class Annotator {
 public:
  Annotator(const BasicEmbeddingModel<Scalar>& model,
            std::span<const ReferenceGroup> groups, SimilarityMode mode,
            GroupCombine combine = GroupCombine::kCentroid)
      : model_(model), mode_(mode) {
    if (groups.empty()) throw InvalidArgument("at least one reference group is required");
    for (const auto& g : groups) scorers_.emplace_back(model, g, mode, combine);
  }

  const std::vector<GroupScorer<Scalar>>& scorers() const { return scorers_; }

  AnnotatedSentence annotate(const Sentence& sentence) const {
    const Eigen::Index n = static_cast<Eigen::Index>(sentence.tokens.size());
    std::vector<std::optional<Eigen::Index>> rows(n);
    TokenMask oov(n);
    for (Eigen::Index t = 0; t < n; ++t) {
      rows[t] = model_.find(sentence.tokens[t]);
      // Zero vectors carry no direction; they are masked like OOV tokens.
      oov(t) = !rows[t] || model_.row(*rows[t]).squaredNorm() == Scalar(0);
    }

    AnnotatedSentence out;
    out.sentence = sentence;
    out.unclassifiable = n == 0 || oov.all();

    Eigen::VectorXd context;
    if (!out.unclassifiable && mode_.kind == SimilarityMode::Kind::kContextual) {
      context = Eigen::VectorXd::Zero(model_.dimensions());
      int used = 0;
      for (Eigen::Index t = 0; t < n; ++t) {
        if (oov(t)) continue;
        context += model_.row(*rows[t]).template cast<double>().transpose();
        ++used;
      }
      context /= used;
    }

    constexpr double kMinusInf = -std::numeric_limits<double>::infinity();
    out.per_category.reserve(scorers_.size());
    for (const auto& scorer : scorers_) {
      CategoryAttention cat;
      cat.category = scorer.category();
      cat.oov_mask = oov;
      cat.similarities = Eigen::VectorXd::Constant(n, kMinusInf);
      for (Eigen::Index t = 0; t < n; ++t) {
        if (oov(t)) continue;
        try {
          cat.similarities(t) = scorer.similarity(model_.row(*rows[t]), context);
        } catch (const ZeroNormVector&) {
          // Only reachable in contextual mode when the blended reference
          // cancels out exactly.
          cat.similarities(t) = 0.0;
        }
      }
      cat.attentions = out.unclassifiable ? Eigen::VectorXd::Zero(n)
                                          : attention_weights(cat.similarities, oov);
      out.per_category.push_back(std::move(cat));
    }
    return out;
  }

  // Annotates every sentence, splitting the work over `threads` threads.
  // Output order matches input order.
  std::vector<AnnotatedSentence> annotate_all(std::span<const Sentence> sentences,
                                              int threads = 1) const {
    std::vector<AnnotatedSentence> out(sentences.size());
    const std::size_t workers = static_cast<std::size_t>(std::max(1, threads));
    if (workers == 1 || sentences.size() < 2 * workers) {
      for (std::size_t i = 0; i < sentences.size(); ++i) out[i] = annotate(sentences[i]);
      return out;
    }
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = sentences.size() * w / workers;
      const std::size_t end = sentences.size() * (w + 1) / workers;
      pool.emplace_back([&, begin, end] {
        for (std::size_t i = begin; i < end; ++i) out[i] = annotate(sentences[i]);
      });
    }
    return out;
  }

 private:
  const BasicEmbeddingModel<Scalar>& model_;
  SimilarityMode mode_;
  std::vector<GroupScorer<Scalar>> scorers_;
};

template <typename Scalar>
AnnotatedSentence annotate(const BasicEmbeddingModel<Scalar>& model,
                           const Sentence& sentence,
                           std::span<const ReferenceGroup> groups,
                           SimilarityMode mode,
                           GroupCombine combine = GroupCombine::kCentroid) {
  return Annotator<Scalar>(model, groups, mode, combine).annotate(sentence);
}

// Adds the k nearest neighbours of the seed centroid to the seeds. Seeds keep
// their order and are never repeated; neighbours follow in `nearest` order.
template <typename Scalar>
ReferenceGroup expand_references(const BasicEmbeddingModel<Scalar>& model,
                                 const ReferenceGroup& seeds, std::size_t k) {
  Eigen::VectorXd centroid = mean_vector(model, seeds.words);
  if (centroid.size() == 0) {
    throw EmptyGroupInVocabulary("no seed of '" + seeds.category +
                                 "' is in the vocabulary");
  }
  ReferenceGroup expanded = seeds;
  if (k == 0) return expanded;
  std::unordered_set<std::string> exclude(seeds.words.begin(), seeds.words.end());
  for (auto& n : nearest_to(model, centroid, k, exclude)) {
    expanded.words.push_back(std::move(n.word));
  }
  return expanded;
}

// Output1: one row per (sentence, category),
//   sentence_id<TAB>category<TAB>token:similarity:attention,...
// with six decimals; OOV tokens are written as token:-inf:0.000000.
void write_output1(std::ostream& out, const AnnotatedSentence& annotated);
void write_output1(std::ostream& out, std::span<const AnnotatedSentence> annotated);

// Rows with the same sentence id must be adjacent. Sentences come back with
// tokens and ids only; `unclassifiable` is recomputed from the OOV masks.
std::vector<AnnotatedSentence> read_output1(std::istream& in);

// Expanded groups file: category<TAB>word1,word2,...
void write_groups(std::ostream& out, std::span<const ReferenceGroup> groups);
std::vector<ReferenceGroup> read_groups(std::istream& in);

}  // namespace suaex

#endif  // SUAEX_ATTENTION_HPP_
