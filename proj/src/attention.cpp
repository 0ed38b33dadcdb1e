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

#include "suaex/attention.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>

#include "format_util.hpp"

namespace suaex {

Eigen::VectorXd attention_weights(const Eigen::VectorXd& similarities,
                                  const TokenMask& oov_mask) {
  if (similarities.size() != oov_mask.size()) {
    throw InvalidArgument("similarities and OOV mask differ in length");
  }
  if (similarities.size() == 0 || oov_mask.all()) {
    throw AllTokensOOV("no in-vocabulary token to attend to");
  }
  double peak = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < similarities.size(); ++i) {
    if (!oov_mask(i)) peak = std::max(peak, similarities(i));
  }
  Eigen::VectorXd weights = Eigen::VectorXd::Zero(similarities.size());
  double total = 0.0;
  for (Eigen::Index i = 0; i < similarities.size(); ++i) {
    if (oov_mask(i)) continue;
    weights(i) = std::exp(similarities(i) - peak);
    total += weights(i);
  }
  return weights / total;
}

void write_output1(std::ostream& out, const AnnotatedSentence& annotated) {
  const auto& tokens = annotated.sentence.tokens;
  std::string line;
  for (const auto& cat : annotated.per_category) {
    line = annotated.sentence.id;
    line += '\t';
    line += cat.category;
    line += '\t';
    for (std::size_t t = 0; t < tokens.size(); ++t) {
      if (t > 0) line += ',';
      line += tokens[t];
      line += ':';
      line += cat.oov_mask(t) ? std::string("-inf") : format_fixed6(cat.similarities(t));
      line += ':';
      line += format_fixed6(cat.oov_mask(t) ? 0.0 : cat.attentions(t));
    }
    line += '\n';
    out << line;
  }
}

void write_output1(std::ostream& out, std::span<const AnnotatedSentence> annotated) {
  for (const auto& a : annotated) write_output1(out, a);
}

std::vector<AnnotatedSentence> read_output1(std::istream& in) {
  std::vector<AnnotatedSentence> result;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split(line, '\t');
    if (fields.size() != 3) {
      throw MalformedFile("Output1 line " + std::to_string(line_number) +
                          " must have 3 tab-separated fields");
    }
    std::vector<std::string> tokens;
    std::vector<double> sims;
    std::vector<double> attns;
    std::vector<bool> oov;
    if (!fields[2].empty()) {
      for (std::string_view item : split(fields[2], ',')) {
        std::size_t second = item.rfind(':');
        std::size_t first = second == std::string_view::npos || second == 0
                                ? std::string_view::npos
                                : item.rfind(':', second - 1);
        if (first == std::string_view::npos || first == 0) {
          throw MalformedFile("bad token entry on Output1 line " +
                              std::to_string(line_number));
        }
        std::string_view sim = item.substr(first + 1, second - first - 1);
        double attn;
        if (!parse_double(item.substr(second + 1), attn)) {
          throw MalformedFile("bad attention value on Output1 line " +
                              std::to_string(line_number));
        }
        tokens.emplace_back(item.substr(0, first));
        if (sim == "-inf") {
          sims.push_back(-std::numeric_limits<double>::infinity());
          oov.push_back(true);
        } else {
          double s;
          if (!parse_double(sim, s)) {
            throw MalformedFile("bad similarity value on Output1 line " +
                                std::to_string(line_number));
          }
          sims.push_back(s);
          oov.push_back(false);
        }
        attns.push_back(attn);
      }
    }

    std::string id(fields[0]);
    if (result.empty() || result.back().sentence.id != id) {
      AnnotatedSentence a;
      a.sentence.id = id;
      a.sentence.tokens = tokens;
      result.push_back(std::move(a));
    } else if (result.back().sentence.tokens != tokens) {
      throw MalformedFile("Output1 rows of sentence " + id + " disagree on tokens");
    }
    AnnotatedSentence& a = result.back();
    if (a.find(std::string(fields[1])) != nullptr) {
      throw MalformedFile("duplicate category for sentence " + id);
    }
    CategoryAttention cat;
    cat.category = std::string(fields[1]);
    const Eigen::Index n = static_cast<Eigen::Index>(tokens.size());
    cat.similarities.resize(n);
    cat.attentions.resize(n);
    cat.oov_mask.resize(n);
    for (Eigen::Index t = 0; t < n; ++t) {
      cat.similarities(t) = sims[t];
      cat.attentions(t) = attns[t];
      cat.oov_mask(t) = oov[t];
    }
    a.unclassifiable = n == 0 || cat.oov_mask.all();
    a.per_category.push_back(std::move(cat));
  }
  return result;
}

void write_groups(std::ostream& out, std::span<const ReferenceGroup> groups) {
  for (const auto& g : groups) {
    out << g.category << '\t';
    for (std::size_t i = 0; i < g.words.size(); ++i) {
      if (i > 0) out << ',';
      out << g.words[i];
    }
    out << '\n';
  }
}

std::vector<ReferenceGroup> read_groups(std::istream& in) {
  std::vector<ReferenceGroup> groups;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split(line, '\t');
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
      throw MalformedFile("groups line " + std::to_string(line_number) +
                          " must be category<TAB>word,word,...");
    }
    ReferenceGroup g;
    g.category = std::string(fields[0]);
    for (std::string_view w : split(fields[1], ',')) {
      if (!w.empty()) g.words.emplace_back(w);
    }
    groups.push_back(std::move(g));
  }
  return groups;
}

}  // namespace suaex
