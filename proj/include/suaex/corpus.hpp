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

// Text ingestion: sentence splitting, tokenization, normalization and
// keyword-based domain filtering of review corpora.

#ifndef SUAEX_CORPUS_HPP_
#define SUAEX_CORPUS_HPP_

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace suaex {

struct RawDocument {
  std::string id;
  std::string text;
};

struct Sentence {
  std::string id;
  std::string original_text;
  std::vector<std::string> tokens;
  std::optional<std::string> gold_category;
};

enum class Stemmer { kNone, kSuffixStripping };

struct PreprocessConfig {
  bool lowercase = true;
  bool strip_punctuation = true;
  bool remove_stopwords = true;
  std::unordered_set<std::string> stopwords;
  Stemmer stemmer = Stemmer::kNone;
  int min_token_length = 1;

  // Lowercasing, punctuation stripping and the built-in English stopword
  // list; no stemming.
  static PreprocessConfig Defaults();

  // Throws InvalidArgument when the invariants do not hold.
  void validate() const;
};

// The English stopword list shipped in data/stopwords_en.txt.
const std::unordered_set<std::string>& default_stopwords();

// One token per line; blank lines and surrounding whitespace are ignored.
std::unordered_set<std::string> read_stopwords(std::istream& in);
std::unordered_set<std::string> read_stopwords_file(const std::string& path);

bool is_valid_utf8(std::string_view text);

// Splits on runs of '.', '!' and '?' followed by whitespace or end of text.
// A single '.' closing a known abbreviation ("Dr.", "e.g.") does not end a
// sentence. Sentence ids are "<doc id>-<n>" with n starting at 1.
std::vector<Sentence> split_sentences(const RawDocument& doc);

// Maximal runs of ASCII letters, digits, apostrophes and non-ASCII bytes.
// Runs made only of apostrophes are dropped.
std::vector<std::string> tokenize(std::string_view text);

// Porter suffix stripping applied until the word stops changing.
std::string stem(std::string_view word);

// Applies, in order: punctuation stripping, lowercasing, stopword removal,
// stemming and the minimum-length filter. A token whose stem is itself a
// stopword is removed too, which keeps normalize idempotent.
std::vector<std::string> normalize(std::span<const std::string> tokens,
                                   const PreprocessConfig& cfg);

// normalize(tokenize(text), cfg)
std::vector<std::string> preprocess(std::string_view text,
                                    const PreprocessConfig& cfg);

// Whole-token, case-insensitive keyword match. With suffix stripping both the
// keywords and the document tokens are stemmed before comparison.
class KeywordFilter {
 public:
  KeywordFilter(const std::set<std::string>& keywords, Stemmer stemmer);

  bool accepts(const RawDocument& doc) const;
  bool passes_everything() const { return keywords_.empty(); }

 private:
  std::unordered_set<std::string> keywords_;
  Stemmer stemmer_;
};

std::vector<RawDocument> filter_corpus(std::span<const RawDocument> docs,
                                       const std::set<std::string>& keywords,
                                       Stemmer stemmer = Stemmer::kNone);

// Streaming variant over the line-corpus format. Returns the number of
// documents written; input order is preserved.
std::size_t filter_corpus(std::istream& in, std::ostream& out,
                          const KeywordFilter& filter);

// Line corpus: one UTF-8 document per LF-terminated line. Document ids are
// the 1-based line numbers. Throws MalformedFile on invalid UTF-8.
void for_each_line_document(std::istream& in,
                            const std::function<void(RawDocument)>& visit);
std::vector<RawDocument> read_line_corpus(std::istream& in);

// Test data TSV: sentence_text<TAB>gold_category with an optional header row
// whose first cell is the literal "sentence_text". Sentence ids are the
// 1-based data row numbers. Tokens are left empty.
std::vector<Sentence> read_test_data(std::istream& in);
std::vector<Sentence> read_test_data_file(const std::string& path);

}  // namespace suaex

#endif  // SUAEX_CORPUS_HPP_
