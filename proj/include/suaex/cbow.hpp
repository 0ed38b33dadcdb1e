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

// Continuous bag-of-words training with negative sampling.
//
// The update rule follows the reference word2vec tool: the hidden layer is
// the mean of the context input vectors, each of the `negative` noise words
// is drawn from the unigram distribution raised to 0.75, the learning rate
// decays linearly to 1e-4 of its initial value over all training words, and
// the accumulated hidden-layer error is added unscaled to every context
// word. The random stream is the word2vec linear congruential generator, so
// a single-threaded run is bit-reproducible for a given seed.
//
// With threads > 1 the corpus is sharded and all threads update the shared
// matrices without locks (relaxed atomic loads and stores per component).
// Results then depend on scheduling.

#ifndef SUAEX_CBOW_HPP_
#define SUAEX_CBOW_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "suaex/embedding.hpp"
#include "suaex/error.hpp"

namespace suaex {

struct TrainConfig {
  int dimensions = 200;
  int window = 5;
  int negative_samples = 5;
  int epochs = 15;
  int min_count = 5;
  double initial_learning_rate = 0.025;
  // Frequent-word subsampling threshold; 0 disables it.
  double subsample = 0.0;
  std::uint64_t seed = 1;
  int threads = 1;

  void validate() const {
    if (dimensions < 1) throw InvalidArgument("dimensions must be >= 1");
    if (window < 1) throw InvalidArgument("window must be >= 1");
    if (negative_samples < 0) throw InvalidArgument("negative_samples must be >= 0");
    if (epochs < 1) throw InvalidArgument("epochs must be >= 1");
    if (min_count < 1) throw InvalidArgument("min_count must be >= 1");
    if (!(initial_learning_rate > 0.0)) {
      throw InvalidArgument("initial_learning_rate must be > 0");
    }
    if (subsample < 0.0) throw InvalidArgument("subsample must be >= 0");
    if (threads < 1) throw InvalidArgument("threads must be >= 1");
  }
};

// Words with count >= min_count, most frequent first, ties by word.
inline std::vector<VocabEntry> build_vocab(
    std::span<const std::vector<std::string>> corpus, int min_count) {
  std::unordered_map<std::string, std::uint64_t> counts;
  for (const auto& sentence : corpus) {
    for (const auto& w : sentence) ++counts[w];
  }
  std::vector<VocabEntry> vocab;
  for (auto& [w, c] : counts) {
    if (c >= static_cast<std::uint64_t>(min_count)) vocab.push_back({w, c});
  }
  std::sort(vocab.begin(), vocab.end(), [](const VocabEntry& a, const VocabEntry& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.word < b.word;
  });
  return vocab;
}

namespace detail {

// word2vec's generator; the whole training run draws from it.
class Word2VecRandom {
 public:
  explicit Word2VecRandom(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    state_ = state_ * 25214903917ULL + 11ULL;
    return state_;
  }

 private:
  std::uint64_t state_;
};

struct PlainAccess {
  template <typename T>
  static T load(const T& x) { return x; }
  template <typename T>
  static void store(T& x, T v) { x = v; }
};

struct RelaxedAccess {
  template <typename T>
  static T load(const T& x) {
    return std::atomic_ref<T>(const_cast<T&>(x)).load(std::memory_order_relaxed);
  }
  template <typename T>
  static void store(T& x, T v) {
    std::atomic_ref<T>(x).store(v, std::memory_order_relaxed);
  }
};

template <typename Scalar>
class CbowTrainer {
 public:
  using Matrix = typename BasicEmbeddingModel<Scalar>::Matrix;

  CbowTrainer(const TrainConfig& cfg, const std::vector<VocabEntry>& vocab,
              std::vector<std::vector<int>> sentences)
      : cfg_(cfg), vocab_(vocab), sentences_(std::move(sentences)) {
    for (const auto& s : sentences_) corpus_words_ += s.size();
    total_words_ = corpus_words_ * static_cast<std::uint64_t>(cfg_.epochs);
    init_weights();
    init_unigram_table();
  }

  Matrix run() {
    if (cfg_.threads == 1) {
      train_shard<PlainAccess>(0, 0, sentences_.size());
    } else {
      std::vector<std::thread> workers;
      const std::size_t n = sentences_.size();
      const std::size_t threads = static_cast<std::size_t>(cfg_.threads);
      for (std::size_t t = 0; t < threads; ++t) {
        std::size_t begin = n * t / threads;
        std::size_t end = n * (t + 1) / threads;
        workers.emplace_back([this, t, begin, end] {
          train_shard<RelaxedAccess>(t, begin, end);
        });
      }
      for (auto& w : workers) w.join();
    }
    return std::move(input_);
  }

 private:
  static constexpr double kMaxExp = 6.0;

  void init_weights() {
    const Eigen::Index v = static_cast<Eigen::Index>(vocab_.size());
    const Eigen::Index d = cfg_.dimensions;
    input_.resize(v, d);
    output_ = Matrix::Zero(v, d);
    Word2VecRandom rng(cfg_.seed);
    for (Eigen::Index i = 0; i < v; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) {
        double u = static_cast<double>(rng.next() & 0xFFFF) / 65536.0;
        input_(i, j) = static_cast<Scalar>((u - 0.5) / static_cast<double>(d));
      }
    }
  }

  void init_unigram_table() {
    const std::size_t v = vocab_.size();
    const std::size_t table_size =
        std::clamp<std::size_t>(v * 100, std::size_t{1} << 20, std::size_t{100'000'000});
    table_.resize(table_size);
    double norm = 0.0;
    for (const auto& e : vocab_) norm += std::pow(static_cast<double>(e.count), 0.75);
    std::size_t i = 0;
    double cumulative = std::pow(static_cast<double>(vocab_[0].count), 0.75) / norm;
    for (std::size_t a = 0; a < table_size; ++a) {
      table_[a] = static_cast<int>(i);
      if (static_cast<double>(a) / static_cast<double>(table_size) > cumulative) {
        ++i;
        if (i >= v) i = v - 1;
        cumulative += std::pow(static_cast<double>(vocab_[i].count), 0.75) / norm;
      }
    }
  }

  template <typename Access>
  void train_shard(std::size_t thread_index, std::size_t begin, std::size_t end) {
    const int d = cfg_.dimensions;
    Word2VecRandom rng(cfg_.seed + thread_index);
    std::vector<double> hidden(d);
    std::vector<double> hidden_error(d);
    std::vector<int> kept;
    std::uint64_t local_words = 0;
    const double sample_threshold = cfg_.subsample * static_cast<double>(corpus_words_);

    for (int epoch = 0; epoch < cfg_.epochs; ++epoch) {
      for (std::size_t s = begin; s < end; ++s) {
        const auto& sentence = sentences_[s];
        local_words += sentence.size();
        kept.clear();
        for (int w : sentence) {
          if (sample_threshold > 0.0) {
            double f = static_cast<double>(vocab_[w].count);
            double keep = (std::sqrt(f / sample_threshold) + 1.0) * sample_threshold / f;
            double u = static_cast<double>(rng.next() & 0xFFFF) / 65536.0;
            if (keep < u) continue;
          }
          kept.push_back(w);
        }
        // Learning rate decays on the shared progress counter, refreshed
        // once per sentence.
        processed_.fetch_add(local_words, std::memory_order_relaxed);
        local_words = 0;
        const double progress = static_cast<double>(processed_.load(std::memory_order_relaxed)) /
                                static_cast<double>(total_words_ + 1);
        const double alpha = cfg_.initial_learning_rate * std::max(1.0 - progress, 1e-4);
        train_sentence<Access>(kept, alpha, rng, hidden, hidden_error);
      }
    }
  }

  template <typename Access>
  void train_sentence(const std::vector<int>& sentence, double alpha,
                      Word2VecRandom& rng, std::vector<double>& hidden,
                      std::vector<double>& hidden_error) {
    const int d = cfg_.dimensions;
    const int n = static_cast<int>(sentence.size());
    for (int pos = 0; pos < n; ++pos) {
      const int word = sentence[pos];
      const int shrink = static_cast<int>(rng.next() % static_cast<std::uint64_t>(cfg_.window));
      const int lo = std::max(0, pos - cfg_.window + shrink);
      const int hi = std::min(n - 1, pos + cfg_.window - shrink);

      std::fill(hidden.begin(), hidden.end(), 0.0);
      int context = 0;
      for (int c = lo; c <= hi; ++c) {
        if (c == pos) continue;
        const Scalar* row = input_.row(sentence[c]).data();
        for (int j = 0; j < d; ++j) hidden[j] += static_cast<double>(Access::load(row[j]));
        ++context;
      }
      if (context == 0) continue;
      for (int j = 0; j < d; ++j) hidden[j] /= context;
      std::fill(hidden_error.begin(), hidden_error.end(), 0.0);

      for (int k = 0; k <= cfg_.negative_samples; ++k) {
        int target;
        double label;
        if (k == 0) {
          if (cfg_.negative_samples == 0) break;
          target = word;
          label = 1.0;
        } else {
          target = table_[(rng.next() >> 16) % table_.size()];
          if (target == word) continue;
          label = 0.0;
        }
        Scalar* out = output_.row(target).data();
        double f = 0.0;
        for (int j = 0; j < d; ++j) f += hidden[j] * static_cast<double>(Access::load(out[j]));
        double g;
        if (f > kMaxExp) {
          g = (label - 1.0) * alpha;
        } else if (f < -kMaxExp) {
          g = label * alpha;
        } else {
          g = (label - 1.0 / (1.0 + std::exp(-f))) * alpha;
        }
        for (int j = 0; j < d; ++j) {
          const double o = static_cast<double>(Access::load(out[j]));
          hidden_error[j] += g * o;
          Access::store(out[j], static_cast<Scalar>(o + g * hidden[j]));
        }
      }

      for (int c = lo; c <= hi; ++c) {
        if (c == pos) continue;
        Scalar* row = input_.row(sentence[c]).data();
        for (int j = 0; j < d; ++j) {
          Access::store(row[j], static_cast<Scalar>(
                                    static_cast<double>(Access::load(row[j])) + hidden_error[j]));
        }
      }
    }
  }

  const TrainConfig& cfg_;
  const std::vector<VocabEntry>& vocab_;
  std::vector<std::vector<int>> sentences_;
  std::uint64_t corpus_words_ = 0;
  std::uint64_t total_words_ = 0;
  std::atomic<std::uint64_t> processed_{0};
  Matrix input_;
  Matrix output_;
  std::vector<int> table_;
};

}  // namespace detail

// Trains CBOW embeddings over pre-tokenized sentences. Throws
// EmptyVocabulary when no word reaches cfg.min_count.
template <typename Scalar = double>
BasicEmbeddingModel<Scalar> train_cbow(std::span<const std::vector<std::string>> corpus,
                                       const TrainConfig& cfg) {
  cfg.validate();
  std::vector<VocabEntry> vocab = build_vocab(corpus, cfg.min_count);
  if (vocab.empty()) {
    throw EmptyVocabulary("no word occurs at least " + std::to_string(cfg.min_count) +
                          " times");
  }
  std::unordered_map<std::string, int> index;
  for (std::size_t i = 0; i < vocab.size(); ++i) index.emplace(vocab[i].word, static_cast<int>(i));

  std::vector<std::vector<int>> sentences;
  sentences.reserve(corpus.size());
  for (const auto& sentence : corpus) {
    std::vector<int> ids;
    ids.reserve(sentence.size());
    for (const auto& w : sentence) {
      auto it = index.find(w);
      if (it != index.end()) ids.push_back(it->second);
    }
    if (!ids.empty()) sentences.push_back(std::move(ids));
  }

  detail::CbowTrainer<Scalar> trainer(cfg, vocab, std::move(sentences));
  auto vectors = trainer.run();
  return BasicEmbeddingModel<Scalar>(std::move(vocab), std::move(vectors));
}

}  // namespace suaex

#endif  // SUAEX_CBOW_HPP_
