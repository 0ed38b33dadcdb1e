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

#include "synthetic.hpp"

#include <algorithm>

namespace suaex::synth {

std::vector<Topic> two_topics() {
  return {{"fruit", {"apple", "pear", "fruit"}}, {"tools", {"bolt", "nut", "wrench"}}};
}

std::vector<std::string> two_topic_fillers() {
  return {"the", "a", "and", "with", "some", "very"};
}

std::vector<std::vector<std::string>> two_topic_corpus(std::size_t per_topic,
                                                       std::uint64_t seed) {
  SplitMix64 rng(seed);
  const auto topics = two_topics();
  const auto fillers = two_topic_fillers();
  std::vector<std::vector<std::string>> corpus;
  corpus.reserve(per_topic * topics.size());
  for (std::size_t i = 0; i < per_topic; ++i) {
    for (const auto& topic : topics) {
      std::vector<std::string> sentence;
      const std::size_t length = 6 + rng.below(5);
      for (std::size_t t = 0; t < length; ++t) {
        sentence.push_back(rng.uniform() < 0.75 ? rng.pick(topic.words) : rng.pick(fillers));
      }
      corpus.push_back(std::move(sentence));
    }
  }
  return corpus;
}

std::vector<Topic> golden_topics() {
  return {
      {"food",
       {"food", "pizza", "pasta", "dish", "menu", "chicken", "dessert", "sauce", "delicious",
        "tasty", "flavor", "appetizer"}},
      {"staff",
       {"staff", "waiter", "waitress", "server", "manager", "service", "friendly", "rude",
        "attentive", "helpful", "polite", "hostess"}},
      {"ambience",
       {"ambience", "decor", "music", "lighting", "atmosphere", "cozy", "noisy", "romantic",
        "interior", "furniture", "candles", "view"}},
  };
}

std::vector<std::string> golden_shared_words() {
  return {"place", "night", "restaurant", "time", "evening", "experience"};
}

std::vector<std::string> golden_raw_corpus(std::size_t docs_per_topic, std::uint64_t seed) {
  SplitMix64 rng(seed);
  const auto topics = golden_topics();
  const auto shared = golden_shared_words();
  const std::vector<std::string> fillers = {"the", "was", "and", "a",    "very",
                                            "we",  "it",  "is",  "our", "with"};
  auto sentence = [&](const Topic& topic) {
    std::string text;
    const std::size_t length = 6 + rng.below(5);
    for (std::size_t t = 0; t < length; ++t) {
      double u = rng.uniform();
      const std::string& w = u < 0.5    ? rng.pick(topic.words)
                             : u < 0.75 ? rng.pick(shared)
                                        : rng.pick(fillers);
      if (!text.empty()) text += ' ';
      text += w;
    }
    text[0] = static_cast<char>(text[0] - 'a' + 'A');
    return text + ".";
  };
  std::vector<std::string> docs;
  for (std::size_t i = 0; i < docs_per_topic; ++i) {
    for (const auto& topic : topics) docs.push_back(sentence(topic) + " " + sentence(topic));
  }
  return docs;
}

EmbeddingModel random_model(std::size_t vocab_size, int dimensions, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<VocabEntry> vocab;
  EmbeddingModel::Matrix vectors(static_cast<Eigen::Index>(vocab_size), dimensions);
  for (std::size_t i = 0; i < vocab_size; ++i) {
    vocab.push_back({"w" + std::to_string(i), 1});
    for (int d = 0; d < dimensions; ++d) {
      vectors(static_cast<Eigen::Index>(i), d) = 2.0 * rng.uniform() - 1.0;
    }
  }
  return EmbeddingModel(std::move(vocab), std::move(vectors));
}

std::vector<Sentence> random_sentences(const EmbeddingModel& model, std::size_t count,
                                       double oov_rate, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Sentence> sentences;
  sentences.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Sentence s;
    s.id = std::to_string(i + 1);
    const std::size_t length = 1 + rng.below(12);
    for (std::size_t t = 0; t < length; ++t) {
      if (rng.uniform() < oov_rate) {
        s.tokens.push_back("oov" + std::to_string(rng.below(1000)));
      } else {
        s.tokens.push_back(model.word(static_cast<Eigen::Index>(rng.below(model.size()))));
      }
    }
    sentences.push_back(std::move(s));
  }
  return sentences;
}

std::vector<ReferenceGroup> random_groups(const EmbeddingModel& model, std::size_t count,
                                          std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<ReferenceGroup> groups;
  for (std::size_t g = 0; g < count; ++g) {
    ReferenceGroup group;
    group.category = "c" + std::to_string(g);
    const std::size_t size = 1 + rng.below(3);
    while (group.words.size() < size) {
      const std::string& w = model.word(static_cast<Eigen::Index>(rng.below(model.size())));
      if (std::find(group.words.begin(), group.words.end(), w) == group.words.end()) {
        group.words.push_back(w);
      }
    }
    groups.push_back(std::move(group));
  }
  return groups;
}

}  // namespace suaex::synth
