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

// Fixed-seed synthetic corpora and models for tests, benchmarks and the
// golden dataset. All draws go through SplitMix64 so outputs do not depend on
// the standard library's distribution implementations.

#ifndef SUAEX_TOOLS_SYNTHETIC_HPP_
#define SUAEX_TOOLS_SYNTHETIC_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "suaex/attention.hpp"
#include "suaex/corpus.hpp"
#include "suaex/embedding.hpp"

namespace suaex::synth {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }
  template <typename T>
  const T& pick(const std::vector<T>& items) { return items[below(items.size())]; }

 private:
  std::uint64_t state_;
};

struct Topic {
  std::string category;
  std::vector<std::string> words;
};

// {apple, pear, fruit} against {bolt, nut, wrench}, with a few shared filler
// words.
std::vector<Topic> two_topics();
std::vector<std::string> two_topic_fillers();

// `per_topic` sentences per topic of 6-10 tokens; each token is a topic word
// with probability 0.75 and a filler otherwise.
std::vector<std::vector<std::string>> two_topic_corpus(std::size_t per_topic,
                                                       std::uint64_t seed);

// The three restaurant-style categories of the golden dataset.
std::vector<Topic> golden_topics();
std::vector<std::string> golden_shared_words();

// Line corpus for the golden dataset: each document holds two sentences of
// one topic, written as plain text with terminal periods.
std::vector<std::string> golden_raw_corpus(std::size_t docs_per_topic, std::uint64_t seed);

// Uniform [-1, 1) vectors for words w0..w{n-1}.
EmbeddingModel random_model(std::size_t vocab_size, int dimensions, std::uint64_t seed);

// Sentences of 1-12 tokens drawn from the model vocabulary; each token is
// replaced by an out-of-vocabulary word with probability `oov_rate`.
std::vector<Sentence> random_sentences(const EmbeddingModel& model, std::size_t count,
                                       double oov_rate, std::uint64_t seed);

// `count` groups of 1-3 distinct vocabulary words, categories c0, c1, ...
std::vector<ReferenceGroup> random_groups(const EmbeddingModel& model, std::size_t count,
                                          std::uint64_t seed);

}  // namespace suaex::synth

#endif  // SUAEX_TOOLS_SYNTHETIC_HPP_
