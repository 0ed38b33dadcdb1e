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

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <fstream>
#include <map>
#include <unordered_set>

#include "format_util.hpp"
#include "suaex/pipeline.hpp"

namespace suaex {
namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::unordered_set<std::string>>& known_keys() {
  static const std::map<std::string, std::unordered_set<std::string>> keys = {
      {"paths",
       {"raw_corpus", "filtered_corpus", "test_data", "model", "expanded_groups", "output1",
        "output2", "aspects", "eval_report", "plot_data", "timing_report", "stopwords"}},
      {"preprocess",
       {"lowercase", "strip_punctuation", "remove_stopwords", "stemmer", "min_token_length"}},
      {"train",
       {"dimensions", "window", "negative_samples", "epochs", "min_count", "learning_rate",
        "subsample", "seed"}},
      {"attention", {"similarity", "context_weight", "group_combine", "expand_k"}},
      {"classify", {"aggregation", "aspect_weight", "top_n"}},
      {"filter", {"keywords"}},
      {"run", {"threads"}},
  };
  return keys;
}

std::string key_name(const std::string& section, const std::string& key) {
  return section + "." + key;
}

std::string trim_copy(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> comma_list(const std::string& value) {
  std::vector<std::string> items;
  if (trim_copy(value).empty()) return items;
  for (std::string_view part : split(value, ',')) {
    std::string item = trim_copy(part);
    if (!item.empty()) items.push_back(std::move(item));
  }
  return items;
}

class Reader {
 public:
  Reader(const pt::ptree& tree, std::filesystem::path base)
      : tree_(tree), base_(std::move(base)) {}

  std::optional<std::string> raw(const std::string& section, const std::string& key) const {
    auto s = tree_.get_child_optional(section);
    if (!s) return std::nullopt;
    auto v = s->get_optional<std::string>(pt::ptree::path_type(key, '\0'));
    if (!v) return std::nullopt;
    return trim_copy(*v);
  }

  void path(const std::string& key, std::filesystem::path& out) const {
    auto v = raw("paths", key);
    if (!v || v->empty()) return;
    std::filesystem::path p(*v);
    out = p.is_absolute() ? p : base_ / p;
  }

  void flag(const std::string& section, const std::string& key, bool& out) const {
    auto v = raw(section, key);
    if (!v) return;
    if (*v == "true" || *v == "yes" || *v == "1" || *v == "on") {
      out = true;
    } else if (*v == "false" || *v == "no" || *v == "0" || *v == "off") {
      out = false;
    } else {
      throw ConfigError(key_name(section, key) + " must be true or false, got '" + *v + "'");
    }
  }

  template <typename T>
  void number(const std::string& section, const std::string& key, T& out) const {
    auto v = raw(section, key);
    if (!v) return;
    T parsed{};
    auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), parsed);
    if (ec != std::errc() || ptr != v->data() + v->size()) {
      throw ConfigError(key_name(section, key) + " is not a valid number: '" + *v + "'");
    }
    out = parsed;
  }

  template <typename E>
  void choice(const std::string& section, const std::string& key,
              const std::map<std::string, E>& options, E& out) const {
    auto v = raw(section, key);
    if (!v) return;
    auto it = options.find(*v);
    if (it == options.end()) {
      std::string allowed;
      for (const auto& [name, _] : options) allowed += (allowed.empty() ? "" : ", ") + name;
      throw ConfigError(key_name(section, key) + " must be one of {" + allowed + "}, got '" +
                        *v + "'");
    }
    out = it->second;
  }

 private:
  const pt::ptree& tree_;
  std::filesystem::path base_;
};

void check_known_keys(const pt::ptree& tree) {
  for (const auto& [section, body] : tree) {
    if (section == "groups" || section == "label_unions") continue;
    auto it = known_keys().find(section);
    if (it == known_keys().end()) throw ConfigError("unknown section [" + section + "]");
    if (!body.data().empty()) throw ConfigError("key '" + section + "' outside a section");
    for (const auto& [key, _] : body) {
      if (!it->second.contains(key)) throw ConfigError("unknown key " + key_name(section, key));
    }
  }
}

}  // namespace

std::vector<std::string> PipelineConfig::categories() const {
  std::vector<std::string> names;
  for (const auto& g : groups) names.push_back(g.category);
  return names;
}

LabelSpace PipelineConfig::label_space() const {
  return LabelSpace{categories(), label_unions};
}

PipelineConfig parse_config(std::istream& in, const std::filesystem::path& base_dir) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("line ") + std::to_string(e.line()) + ": " + e.message());
  }
  check_known_keys(tree);

  PipelineConfig cfg;
  Reader r(tree, base_dir);

  auto& p = cfg.paths;
  r.path("raw_corpus", p.raw_corpus);
  r.path("filtered_corpus", p.filtered_corpus);
  r.path("test_data", p.test_data);
  r.path("model", p.model);
  r.path("expanded_groups", p.expanded_groups);
  r.path("output1", p.output1);
  r.path("output2", p.output2);
  r.path("aspects", p.aspects);
  r.path("eval_report", p.eval_report);
  r.path("plot_data", p.plot_data);
  r.path("timing_report", p.timing_report);
  r.path("stopwords", p.stopwords);

  auto& pre = cfg.preprocess;
  r.flag("preprocess", "lowercase", pre.lowercase);
  r.flag("preprocess", "strip_punctuation", pre.strip_punctuation);
  r.flag("preprocess", "remove_stopwords", pre.remove_stopwords);
  r.choice<Stemmer>("preprocess", "stemmer",
                    {{"none", Stemmer::kNone}, {"suffix_stripping", Stemmer::kSuffixStripping}},
                    pre.stemmer);
  r.number("preprocess", "min_token_length", pre.min_token_length);
  if (!p.stopwords.empty()) {
    try {
      pre.stopwords = read_stopwords_file(p.stopwords.string());
    } catch (const IoError& e) {
      throw ConfigError(e.what());
    }
  }

  auto& t = cfg.train;
  r.number("train", "dimensions", t.dimensions);
  r.number("train", "window", t.window);
  r.number("train", "negative_samples", t.negative_samples);
  r.number("train", "epochs", t.epochs);
  r.number("train", "min_count", t.min_count);
  r.number("train", "learning_rate", t.initial_learning_rate);
  r.number("train", "subsample", t.subsample);
  r.number("train", "seed", t.seed);
  r.number("run", "threads", cfg.threads);
  t.threads = cfg.threads;

  SimilarityMode::Kind kind = SimilarityMode::Kind::kDirect;
  r.choice<SimilarityMode::Kind>(
      "attention", "similarity",
      {{"direct", SimilarityMode::Kind::kDirect}, {"contextual", SimilarityMode::Kind::kContextual}},
      kind);
  double context_weight = 0.5;
  r.number("attention", "context_weight", context_weight);
  cfg.similarity = kind == SimilarityMode::Kind::kDirect ? SimilarityMode::Direct()
                                                          : SimilarityMode::Contextual(context_weight);
  r.choice<GroupCombine>("attention", "group_combine",
                         {{"centroid", GroupCombine::kCentroid},
                          {"max", GroupCombine::kMax},
                          {"mean", GroupCombine::kMean}},
                         cfg.group_combine);
  r.number("attention", "expand_k", cfg.expand_k);

  r.choice<AggregationMode>("classify", "aggregation",
                            {{"mean", AggregationMode::kMean}, {"max", AggregationMode::kMax}},
                            cfg.aggregation);
  r.choice<AspectWeight>("classify", "aspect_weight",
                         {{"mass", AspectWeight::kAttentionMass},
                          {"frequency", AspectWeight::kFrequency}},
                         cfg.aspect_weight);
  r.number("classify", "top_n", cfg.top_n);

  if (auto kw = r.raw("filter", "keywords")) {
    for (auto& k : comma_list(*kw)) cfg.filter_keywords.insert(std::move(k));
  }

  try {
    pre.validate();
    t.validate();
    cfg.similarity.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }

  std::unordered_set<std::string> seen;
  if (auto groups = tree.get_child_optional("groups")) {
    for (const auto& [category, node] : *groups) {
      if (!seen.insert(category).second) {
        throw ConfigError("duplicate category '" + category + "'");
      }
      ReferenceGroup g;
      g.category = category;
      for (const auto& w : comma_list(node.data())) {
        std::vector<std::string> token{w};
        auto normalized = normalize(token, pre);
        if (normalized.size() != 1) {
          throw ConfigError("reference word '" + w + "' of '" + category +
                            "' does not survive preprocessing");
        }
        if (std::find(g.words.begin(), g.words.end(), normalized[0]) == g.words.end()) {
          g.words.push_back(normalized[0]);
        }
      }
      if (g.words.empty()) throw ConfigError("group '" + category + "' has no words");
      cfg.groups.push_back(std::move(g));
    }
  }
  if (cfg.groups.empty()) throw ConfigError("at least one reference group is required");

  if (auto unions = tree.get_child_optional("label_unions")) {
    for (const auto& [label, node] : *unions) {
      if (seen.contains(label)) {
        throw ConfigError("label union '" + label + "' clashes with a category");
      }
      auto members = comma_list(node.data());
      if (members.empty()) throw ConfigError("label union '" + label + "' has no members");
      for (const auto& m : members) {
        if (!std::any_of(cfg.groups.begin(), cfg.groups.end(),
                         [&](const ReferenceGroup& g) { return g.category == m; })) {
          throw ConfigError("label union '" + label + "' names unknown category '" + m + "'");
        }
      }
      seen.insert(label);
      cfg.label_unions.emplace_back(label, std::move(members));
    }
  }
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return parse_config(in, path.parent_path());
}

}  // namespace suaex
