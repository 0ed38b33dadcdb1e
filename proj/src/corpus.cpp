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

#include "suaex/corpus.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "suaex/error.hpp"

namespace suaex {
namespace {

constexpr std::string_view kDefaultStopwords =
#include "suaex/stopwords_en.inc"
    ;

constexpr std::array<std::string_view, 24> kAbbreviations = {
    "dr",  "mr",  "mrs",  "ms",  "prof", "st",   "jr",  "sr",
    "vs",  "etc", "e.g",  "i.e", "inc",  "ltd",  "co",  "mt",
    "no",  "approx", "dept", "est", "fig", "u.s", "a.m", "p.m"};

bool is_ascii_alnum(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9');
}

// Non-ASCII bytes belong to multi-byte UTF-8 letters.
bool is_token_byte(unsigned char c) {
  return is_ascii_alnum(c) || c == '\'' || c >= 0x80;
}

bool is_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool is_terminal(char c) { return c == '.' || c == '!' || c == '?'; }

bool is_closer(char c) {
  return c == '"' || c == '\'' || c == ')' || c == ']';
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string_view trim(std::string_view s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && is_space(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && is_space(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

// The word immediately before position `dot`, including inner dots
// ("e.g" for "e.g.").
bool ends_with_abbreviation(std::string_view text, std::size_t dot) {
  std::size_t begin = dot;
  while (begin > 0) {
    unsigned char c = static_cast<unsigned char>(text[begin - 1]);
    if (!is_ascii_alnum(c) && c != '.') break;
    --begin;
  }
  std::string word = ascii_lower(text.substr(begin, dot - begin));
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), word) !=
         kAbbreviations.end();
}

std::size_t utf8_length(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::string strip_to_token_chars(std::string_view token) {
  std::string out;
  out.reserve(token.size());
  for (unsigned char c : token) {
    if (is_token_byte(c)) out.push_back(static_cast<char>(c));
  }
  if (std::all_of(out.begin(), out.end(), [](char c) { return c == '\''; })) {
    out.clear();
  }
  return out;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

PreprocessConfig PreprocessConfig::Defaults() {
  PreprocessConfig cfg;
  cfg.stopwords = default_stopwords();
  return cfg;
}

void PreprocessConfig::validate() const {
  if (remove_stopwords && stopwords.empty()) {
    throw InvalidArgument("stopword removal enabled with an empty stopword list");
  }
  if (min_token_length < 1) {
    throw InvalidArgument("min_token_length must be >= 1");
  }
}

const std::unordered_set<std::string>& default_stopwords() {
  static const std::unordered_set<std::string> words = [] {
    std::istringstream in{std::string(kDefaultStopwords)};
    return read_stopwords(in);
  }();
  return words;
}

std::unordered_set<std::string> read_stopwords(std::istream& in) {
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view word = trim(line);
    if (!word.empty()) words.emplace(word);
  }
  return words;
}

std::unordered_set<std::string> read_stopwords_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open stopword file " + path);
  return read_stopwords(in);
}

bool is_valid_utf8(std::string_view text) {
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    std::size_t extra;
    char32_t cp;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      extra = 1;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + extra >= n) return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      unsigned char cc = static_cast<unsigned char>(text[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // Overlong encodings, surrogates and out-of-range code points.
    static constexpr char32_t kMin[] = {0, 0x80, 0x800, 0x10000};
    if (cp < kMin[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      return false;
    }
    i += extra + 1;
  }
  return true;
}

std::vector<Sentence> split_sentences(const RawDocument& doc) {
  std::vector<Sentence> sentences;
  std::string_view text = doc.text;
  auto emit = [&](std::size_t begin, std::size_t end) {
    std::string_view piece = trim(text.substr(begin, end - begin));
    if (piece.empty()) return;
    Sentence s;
    s.id = doc.id + "-" + std::to_string(sentences.size() + 1);
    s.original_text = std::string(piece);
    sentences.push_back(std::move(s));
  };

  std::size_t start = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_terminal(text[i])) {
      ++i;
      continue;
    }
    std::size_t run_begin = i;
    while (i < text.size() && is_terminal(text[i])) ++i;
    std::size_t run_end = i;
    while (i < text.size() && is_closer(text[i])) ++i;
    bool boundary =
        i == text.size() || is_space(static_cast<unsigned char>(text[i]));
    if (!boundary) continue;
    bool single_dot = run_end - run_begin == 1 && text[run_begin] == '.';
    if (single_dot && ends_with_abbreviation(text, run_begin)) continue;
    emit(start, i);
    start = i;
  }
  emit(start, text.size());
  return sentences;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_token_byte(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t begin = i;
    bool has_content = false;
    while (i < text.size() && is_token_byte(static_cast<unsigned char>(text[i]))) {
      has_content = has_content || text[i] != '\'';
      ++i;
    }
    if (has_content) tokens.emplace_back(text.substr(begin, i - begin));
  }
  return tokens;
}

std::vector<std::string> normalize(std::span<const std::string> tokens,
                                   const PreprocessConfig& cfg) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  auto is_stopword = [&](const std::string& t) {
    return cfg.remove_stopwords && cfg.stopwords.contains(t);
  };
  for (const std::string& raw : tokens) {
    std::string token = cfg.strip_punctuation ? strip_to_token_chars(raw) : raw;
    if (token.empty()) continue;
    if (cfg.lowercase) token = ascii_lower(token);
    if (is_stopword(token)) continue;
    if (cfg.stemmer == Stemmer::kSuffixStripping) {
      token = stem(token);
      if (is_stopword(token)) continue;
    }
    if (utf8_length(token) < static_cast<std::size_t>(cfg.min_token_length)) {
      continue;
    }
    out.push_back(std::move(token));
  }
  return out;
}

std::vector<std::string> preprocess(std::string_view text,
                                    const PreprocessConfig& cfg) {
  std::vector<std::string> tokens = tokenize(text);
  return normalize(tokens, cfg);
}

KeywordFilter::KeywordFilter(const std::set<std::string>& keywords,
                             Stemmer stemmer)
    : stemmer_(stemmer) {
  for (const std::string& k : keywords) {
    std::string key = ascii_lower(k);
    if (stemmer_ == Stemmer::kSuffixStripping) key = stem(key);
    keywords_.insert(std::move(key));
  }
}

bool KeywordFilter::accepts(const RawDocument& doc) const {
  if (keywords_.empty()) return true;
  for (std::string& token : tokenize(ascii_lower(doc.text))) {
    if (stemmer_ == Stemmer::kSuffixStripping) token = stem(token);
    if (keywords_.contains(token)) return true;
  }
  return false;
}

std::vector<RawDocument> filter_corpus(std::span<const RawDocument> docs,
                                       const std::set<std::string>& keywords,
                                       Stemmer stemmer) {
  KeywordFilter filter(keywords, stemmer);
  std::vector<RawDocument> out;
  std::copy_if(docs.begin(), docs.end(), std::back_inserter(out),
               [&](const RawDocument& d) { return filter.accepts(d); });
  return out;
}

std::size_t filter_corpus(std::istream& in, std::ostream& out,
                          const KeywordFilter& filter) {
  std::size_t written = 0;
  for_each_line_document(in, [&](RawDocument doc) {
    if (!filter.accepts(doc)) return;
    out << doc.text << '\n';
    ++written;
  });
  return written;
}

void for_each_line_document(std::istream& in,
                            const std::function<void(RawDocument)>& visit) {
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    strip_cr(line);
    if (!is_valid_utf8(line)) {
      throw MalformedFile("invalid UTF-8 on corpus line " +
                          std::to_string(line_number));
    }
    visit(RawDocument{std::to_string(line_number), std::move(line)});
  }
}

std::vector<RawDocument> read_line_corpus(std::istream& in) {
  std::vector<RawDocument> docs;
  for_each_line_document(in,
                         [&](RawDocument d) { docs.push_back(std::move(d)); });
  return docs;
}

std::vector<Sentence> read_test_data(std::istream& in) {
  std::vector<Sentence> sentences;
  std::string line;
  std::size_t line_number = 0;
  bool first_row = true;
  while (std::getline(in, line)) {
    ++line_number;
    strip_cr(line);
    if (line.empty()) continue;
    if (!is_valid_utf8(line)) {
      throw MalformedFile("invalid UTF-8 on test data line " +
                          std::to_string(line_number));
    }
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw MalformedFile("test data line " + std::to_string(line_number) +
                          " must have exactly two tab-separated columns");
    }
    std::string text = line.substr(0, tab);
    std::string gold = std::string(trim(std::string_view(line).substr(tab + 1)));
    bool header = first_row && text == "sentence_text";
    first_row = false;
    if (header) continue;
    Sentence s;
    s.id = std::to_string(sentences.size() + 1);
    s.original_text = std::move(text);
    if (!gold.empty()) s.gold_category = std::move(gold);
    sentences.push_back(std::move(s));
  }
  return sentences;
}

std::vector<Sentence> read_test_data_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open test data " + path);
  return read_test_data(in);
}

}  // namespace suaex
