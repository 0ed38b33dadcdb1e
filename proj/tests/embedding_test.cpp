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

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "suaex/cbow.hpp"
#include "suaex/corpus.hpp"
#include "suaex/embedding.hpp"
#include "synth/synthetic.hpp"

namespace suaex {
namespace {

using Corpus = std::vector<std::vector<std::string>>;

// The two-topic model is shared by several tests; training takes well under
// a second but there is no reason to repeat it.
const EmbeddingModel& two_topic_model() {
  static const EmbeddingModel model = [] {
    Corpus corpus = synth::two_topic_corpus(500, 7);
    TrainConfig cfg;
    cfg.seed = 42;
    return train_cbow(std::span<const std::vector<std::string>>(corpus), cfg);
  }();
  return model;
}

EmbeddingModel small_model() {
  EmbeddingModel::Matrix m(3, 4);
  m << 1, 0, 0, 0.5,  //
      0.1, 0.2, 0.3, 0.4,  //
      -1, 2.5e-7, 3, 1.0 / 3;
  return EmbeddingModel({{"a", 0}, {"b", 0}, {"c", 0}}, m);
}

TEST(BuildVocab, FrequencyThreshold) {
  Corpus corpus = {tokenize("x x y")};
  auto vocab = build_vocab(corpus, 2);
  ASSERT_EQ(vocab.size(), 1u);
  EXPECT_EQ(vocab[0].word, "x");
  EXPECT_EQ(vocab[0].count, 2u);
}

TEST(TrainCbow, EmptyVocabulary) {
  Corpus corpus = {{"x", "y"}};
  TrainConfig cfg;
  EXPECT_THROW(train_cbow(std::span<const std::vector<std::string>>(corpus), cfg),
               EmptyVocabulary);
}

TEST(TrainCbow, DeterministicSingleThreaded) {
  Corpus corpus = synth::two_topic_corpus(100, 3);
  TrainConfig cfg;
  cfg.dimensions = 20;
  cfg.epochs = 3;
  auto a = train_cbow(std::span<const std::vector<std::string>>(corpus), cfg);
  auto b = train_cbow(std::span<const std::vector<std::string>>(corpus), cfg);
  EXPECT_EQ(a.vocab(), b.vocab());
  EXPECT_TRUE(a.vectors() == b.vectors());

  std::ostringstream sa;
  std::ostringstream sb;
  save_model(a, sa);
  save_model(b, sb);
  EXPECT_EQ(sa.str(), sb.str());

  cfg.seed = 2;
  auto c = train_cbow(std::span<const std::vector<std::string>>(corpus), cfg);
  EXPECT_FALSE(a.vectors() == c.vectors());
}

TEST(TrainCbow, ParallelTrainingStillSeparatesTopics) {
  Corpus corpus = synth::two_topic_corpus(500, 7);
  TrainConfig cfg;
  cfg.threads = 3;
  auto model = train_cbow(std::span<const std::vector<std::string>>(corpus), cfg);
  EXPECT_GT(cosine(model.vector("apple"), model.vector("pear")),
            cosine(model.vector("apple"), model.vector("bolt")));
}

TEST(TrainCbow, TwoTopicSeparation) {
  const auto& model = two_topic_model();
  double within = 0.0;
  double cross = 0.0;
  int nw = 0;
  int nc = 0;
  auto topics = synth::two_topics();
  for (std::size_t ti = 0; ti < topics.size(); ++ti) {
    for (std::size_t tj = ti; tj < topics.size(); ++tj) {
      for (const auto& a : topics[ti].words) {
        for (const auto& b : topics[tj].words) {
          if (a == b) continue;
          double c = cosine(model.vector(a), model.vector(b));
          (ti == tj ? within : cross) += c;
          ++(ti == tj ? nw : nc);
        }
      }
    }
  }
  EXPECT_GT(within / nw, cross / nc);
}

TEST(Model, RoundTripExact) {
  auto m = small_model();
  std::stringstream buf;
  save_model(m, buf);
  auto loaded = load_model<double>(buf);
  ASSERT_EQ(loaded.size(), 3);
  ASSERT_EQ(loaded.dimensions(), 4);
  for (Eigen::Index i = 0; i < 3; ++i) EXPECT_EQ(loaded.word(i), m.word(i));
  EXPECT_LE((loaded.vectors() - m.vectors()).cwiseAbs().maxCoeff(), 1e-6);
  // Shortest round-trip formatting is in fact exact.
  EXPECT_TRUE(loaded.vectors() == m.vectors());
}

TEST(Model, RoundTripPreservesNearestNeighbours) {
  auto m = synth::random_model(60, 8, 21);
  std::stringstream buf;
  save_model(m, buf);
  auto loaded = load_model<double>(buf);
  synth::SplitMix64 rng(4);
  for (int probe = 0; probe < 10; ++probe) {
    const std::string& w = m.word(static_cast<Eigen::Index>(rng.below(60)));
    EXPECT_EQ(nearest(loaded, w, 10), nearest(m, w, 10));
  }
}

TEST(Model, HeaderRowCountMismatch) {
  std::istringstream in("2 4\na 1 2 3 4\nb 1 2 3 4\nc 1 2 3 4\n");
  EXPECT_THROW(load_model<double>(in), MalformedModelFile);
}

TEST(Model, MalformedRows) {
  for (const char* text : {"", "x y\n", "1 2\na 1\n", "2 1\na 1\na 2\n", "1 1\na nan\n",
                           "2 2\na 1 2\n"}) {
    std::istringstream in(text);
    EXPECT_THROW(load_model<double>(in), MalformedModelFile) << text;
  }
}

TEST(Model, LoadsThirdPartyVectorFile) {
  const std::string dir = std::string(SUAEX_TEST_DATA_DIR) + "/reference_vectors";
  auto model = load_model<double>(dir + "/vectors.txt");
  EXPECT_EQ(model.size(), 14);
  EXPECT_EQ(model.dimensions(), 16);

  std::map<std::string, std::vector<std::pair<std::string, double>>> expected;
  std::ifstream in(dir + "/neighbours.tsv");
  std::string probe;
  std::string word;
  double sim;
  while (in >> probe >> word >> sim) expected[probe].emplace_back(word, sim);
  ASSERT_EQ(expected.size(), 5u);

  for (const auto& [query, list] : expected) {
    auto got = nearest(model, query, list.size());
    ASSERT_EQ(got.size(), list.size());
    for (std::size_t i = 0; i < list.size(); ++i) {
      EXPECT_EQ(got[i].word, list[i].first) << query << " rank " << i;
      // The reference tool computes in single precision.
      EXPECT_NEAR(got[i].similarity, list[i].second, 1e-5);
    }
  }

  auto as_float = load_model<float>(dir + "/vectors.txt");
  EXPECT_EQ(nearest(as_float, "apple", 3).front().word, expected["apple"].front().first);
}

TEST(Vector, LookupAndOov) {
  auto m = small_model();
  EXPECT_TRUE(m.vector("b") == m.row(1));
  EXPECT_THROW(m.vector("zzz"), OutOfVocabulary);
}

TEST(Vector, CaseDifferenceResolvedByPreprocessing) {
  auto m = small_model();
  auto tokens = preprocess("B", PreprocessConfig::Defaults());
  ASSERT_EQ(tokens.size(), 1u);
  EXPECT_TRUE(m.vector(tokens[0]) == m.row(1));
}

TEST(Cosine, Examples) {
  Eigen::Vector2d x(1, 0);
  Eigen::Vector2d y(0, 1);
  Eigen::Vector2d d(1, 1);
  EXPECT_EQ(cosine(x, x), 1.0);
  EXPECT_EQ(cosine(x, y), 0.0);
  EXPECT_NEAR(cosine(d, x), 0.70710678, 1e-8);
  EXPECT_THROW(cosine(x, Eigen::Vector2d::Zero()), ZeroNormVector);
  EXPECT_THROW(cosine(Eigen::VectorXd(x), Eigen::VectorXd::Ones(3)), InvalidArgument);
}

TEST(Cosine, SymmetricAndScaleInvariant) {
  synth::SplitMix64 rng(9);
  for (int trial = 0; trial < 1000; ++trial) {
    Eigen::VectorXd u(16);
    Eigen::VectorXd v(16);
    for (int i = 0; i < 16; ++i) {
      u(i) = 2 * rng.uniform() - 1;
      v(i) = 2 * rng.uniform() - 1;
    }
    const double c = 1e-3 + 1e3 * rng.uniform();
    EXPECT_EQ(cosine(u, v), cosine(v, u));
    EXPECT_LT(std::abs(cosine(u, v) - cosine((c * u).eval(), v)), 1e-9);
    EXPECT_LE(std::abs(cosine(u, v)), 1.0);
  }
}

TEST(Nearest, Truncation) {
  EmbeddingModel::Matrix m(2, 2);
  m << 1, 0, 0, 1;
  EmbeddingModel model({{"p", 0}, {"q", 0}}, m);
  EXPECT_TRUE(nearest(model, "p", 0).empty());
  auto got = nearest(model, "p", 5);
  ASSERT_EQ(got.size(), 1u);
  EXPECT_EQ(got[0].word, "q");
}

TEST(Nearest, TwoTopicApple) {
  auto got = nearest(two_topic_model(), "apple", 2);
  ASSERT_EQ(got.size(), 2u);
  const std::set<std::string> fruit = {"pear", "fruit"};
  EXPECT_TRUE(fruit.contains(got[0].word));
  EXPECT_TRUE(fruit.contains(got[1].word));
}

TEST(Nearest, TotalOrderWithoutDuplicates) {
  // Duplicate rows force exact cosine ties, which must fall back to the word.
  EmbeddingModel::Matrix m(5, 2);
  m << 1, 0, 0.5, 0.5, 0.5, 0.5, 2, 2, -1, 0;
  EmbeddingModel model({{"q", 0}, {"d", 0}, {"b", 0}, {"c", 0}, {"a", 0}}, m);
  auto got = nearest(model, "q", 10);
  std::vector<std::string> words;
  for (const auto& n : got) words.push_back(n.word);
  EXPECT_EQ(words, (std::vector<std::string>{"b", "c", "d", "a"}));

  auto big = synth::random_model(200, 10, 8);
  auto list = nearest(big, "w0", 199);
  std::set<std::string> seen;
  for (std::size_t i = 0; i < list.size(); ++i) {
    EXPECT_TRUE(seen.insert(list[i].word).second);
    EXPECT_NE(list[i].word, "w0");
    if (i > 0) {
      EXPECT_TRUE(list[i - 1].similarity > list[i].similarity ||
                  (list[i - 1].similarity == list[i].similarity &&
                   list[i - 1].word < list[i].word));
    }
  }
}

}  // namespace
}  // namespace suaex
