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

// Word embedding model: vocabulary plus one dense row per word, the cosine
// similarity primitive, nearest-neighbour search and the word-vector text
// format.
//
// Everything is templated on the storage scalar. Similarities are always
// computed in double regardless of the storage type.

#ifndef SUAEX_EMBEDDING_HPP_
#define SUAEX_EMBEDDING_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "suaex/error.hpp"

namespace suaex {

struct VocabEntry {
  std::string word;
  std::uint64_t count = 0;

  bool operator==(const VocabEntry&) const = default;
};

template <typename Scalar>
class BasicEmbeddingModel {
 public:
  using Matrix =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  using ConstRow = typename Matrix::ConstRowXpr;

  BasicEmbeddingModel() = default;

  // Throws InvalidArgument if the rows do not match the vocabulary, a word
  // repeats or an entry is not finite.
  BasicEmbeddingModel(std::vector<VocabEntry> vocab, Matrix vectors)
      : vocab_(std::move(vocab)), vectors_(std::move(vectors)) {
    if (static_cast<Eigen::Index>(vocab_.size()) != vectors_.rows()) {
      throw InvalidArgument("vocabulary size does not match vector rows");
    }
    if (!vectors_.allFinite()) {
      throw InvalidArgument("embedding vectors must be finite");
    }
    index_.reserve(vocab_.size());
    for (std::size_t i = 0; i < vocab_.size(); ++i) {
      if (!index_.emplace(vocab_[i].word, static_cast<Eigen::Index>(i)).second) {
        throw InvalidArgument("duplicate vocabulary word '" + vocab_[i].word + "'");
      }
    }
  }

  Eigen::Index size() const { return vectors_.rows(); }
  Eigen::Index dimensions() const { return vectors_.cols(); }
  const std::vector<VocabEntry>& vocab() const { return vocab_; }
  const Matrix& vectors() const { return vectors_; }
  const std::string& word(Eigen::Index i) const { return vocab_[i].word; }

  std::optional<Eigen::Index> find(const std::string& word) const {
    auto it = index_.find(word);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool contains(const std::string& word) const { return index_.contains(word); }

  ConstRow row(Eigen::Index i) const { return vectors_.row(i); }

  // Throws OutOfVocabulary; there is no zero-vector fallback.
  ConstRow vector(const std::string& word) const {
    auto i = find(word);
    if (!i) throw OutOfVocabulary(word);
    return vectors_.row(*i);
  }

  template <typename Other>
  BasicEmbeddingModel<Other> cast() const {
    return BasicEmbeddingModel<Other>(vocab_,
                                      vectors_.template cast<Other>());
  }

  // Same vocabulary with every vector multiplied by `factor`.
  BasicEmbeddingModel scaled(Scalar factor) const {
    return BasicEmbeddingModel(vocab_, vectors_ * factor);
  }

 private:
  std::vector<VocabEntry> vocab_;
  Matrix vectors_;
  std::unordered_map<std::string, Eigen::Index> index_;
};

using EmbeddingModel = BasicEmbeddingModel<double>;

template <typename DerivedA, typename DerivedB>
double cosine(const Eigen::MatrixBase<DerivedA>& u,
              const Eigen::MatrixBase<DerivedB>& v) {
  if (u.size() != v.size()) {
    throw InvalidArgument("cosine of vectors with different lengths");
  }
  const auto ud = u.template cast<double>();
  const auto vd = v.template cast<double>();
  const double nu = ud.norm();
  const double nv = vd.norm();
  if (nu == 0.0 || nv == 0.0) throw ZeroNormVector("cosine undefined");
  return std::clamp(ud.dot(vd) / (nu * nv), -1.0, 1.0);
}

struct Neighbor {
  std::string word;
  double similarity;

  bool operator==(const Neighbor&) const = default;
};

// Ranks every vocabulary row not in `exclude` by cosine to `query`,
// descending, ties broken by word. Zero-norm rows are skipped.
template <typename Scalar, typename Derived>
std::vector<Neighbor> nearest_to(const BasicEmbeddingModel<Scalar>& model,
                                 const Eigen::MatrixBase<Derived>& query,
                                 std::size_t k,
                                 const std::unordered_set<std::string>& exclude) {
  if (k == 0) return {};
  const Eigen::VectorXd q = query.template cast<double>().transpose();
  const double qn = q.norm();
  if (qn == 0.0) throw ZeroNormVector("nearest-neighbour query");

  std::vector<Neighbor> scored;
  scored.reserve(model.size());
  for (Eigen::Index i = 0; i < model.size(); ++i) {
    const std::string& w = model.word(i);
    if (exclude.contains(w)) continue;
    const double rn = model.row(i).template cast<double>().norm();
    if (rn == 0.0) continue;
    double c = model.row(i).template cast<double>().dot(q.transpose()) / (qn * rn);
    scored.push_back({w, std::clamp(c, -1.0, 1.0)});
  }
  auto before = [](const Neighbor& a, const Neighbor& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return a.word < b.word;
  };
  const std::size_t n = std::min(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + n, scored.end(), before);
  scored.resize(n);
  return scored;
}

// The k most similar words to `word`, which is itself excluded. Result length
// is min(k, |vocab| - 1) when no row has zero norm.
template <typename Scalar>
std::vector<Neighbor> nearest(const BasicEmbeddingModel<Scalar>& model,
                              const std::string& word, std::size_t k) {
  auto query = model.vector(word);
  return nearest_to(model, query, k, {word});
}

// ---------------------------------------------------------------------------
// Word-vector text format:
//   <vocab_size> <dimensions>
//   word v1 v2 ... vd
// Values are written in shortest round-trip form, so a save/load cycle is
// exact for the storage scalar.

template <typename Scalar>
void save_model(const BasicEmbeddingModel<Scalar>& model, std::ostream& out) {
  out << model.size() << ' ' << model.dimensions() << '\n';
  char buf[64];
  std::string line;
  for (Eigen::Index i = 0; i < model.size(); ++i) {
    line = model.word(i);
    for (Eigen::Index d = 0; d < model.dimensions(); ++d) {
      auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), model.vectors()(i, d));
      line.push_back(' ');
      line.append(buf, end);
    }
    line.push_back('\n');
    out << line;
  }
  if (!out) throw IoError("failed writing embedding model");
}

template <typename Scalar>
void save_model(const BasicEmbeddingModel<Scalar>& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  save_model(model, out);
}

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t begin = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > begin) fields.push_back(line.substr(begin, i - begin));
  }
  return fields;
}

template <typename T>
bool parse_number(std::string_view s, T& value) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace detail

template <typename Scalar>
BasicEmbeddingModel<Scalar> load_model(std::istream& in) {
  using Model = BasicEmbeddingModel<Scalar>;
  std::string line;
  if (!std::getline(in, line)) throw MalformedModelFile("missing header");
  auto header = detail::split_fields(line);
  long long rows = 0;
  long long dims = 0;
  if (header.size() != 2 || !detail::parse_number(header[0], rows) ||
      !detail::parse_number(header[1], dims) || rows < 0 || dims < 1) {
    throw MalformedModelFile("header must be '<vocab_size> <dimensions>'");
  }

  std::vector<VocabEntry> vocab;
  vocab.reserve(rows);
  typename Model::Matrix vectors(rows, dims);
  std::unordered_set<std::string> seen;
  long long r = 0;
  long long line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    auto fields = detail::split_fields(line);
    if (fields.empty()) continue;
    if (r >= rows) {
      throw MalformedModelFile("more rows than the header's " + std::to_string(rows));
    }
    if (static_cast<long long>(fields.size()) != dims + 1) {
      throw MalformedModelFile("line " + std::to_string(line_number) + " has " +
                               std::to_string(fields.size() - 1) +
                               " values, expected " + std::to_string(dims));
    }
    std::string word(fields[0]);
    if (!seen.insert(word).second) {
      throw MalformedModelFile("duplicate word '" + word + "'");
    }
    for (long long d = 0; d < dims; ++d) {
      Scalar v;
      if (!detail::parse_number(fields[d + 1], v) || !std::isfinite(v)) {
        throw MalformedModelFile("bad value on line " + std::to_string(line_number));
      }
      vectors(r, d) = v;
    }
    vocab.push_back({std::move(word), 0});
    ++r;
  }
  if (r != rows) {
    throw MalformedModelFile("header declares " + std::to_string(rows) +
                             " rows, found " + std::to_string(r));
  }
  return Model(std::move(vocab), std::move(vectors));
}

template <typename Scalar>
BasicEmbeddingModel<Scalar> load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model " + path);
  return load_model<Scalar>(in);
}

}  // namespace suaex

#endif  // SUAEX_EMBEDDING_HPP_
