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

// Config parsing plus end-to-end runs of the `suaex` binary.

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "suaex/pipeline.hpp"
#include "synth/synthetic.hpp"

namespace suaex {
namespace {

namespace fs = std::filesystem;

const fs::path kGolden = fs::path(SUAEX_TEST_DATA_DIR) / "golden";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

class TempDir {
 public:
  explicit TempDir(const std::string& name)
      : path_(fs::temp_directory_path() /
              ("suaex_" + name + "_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()))) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

struct CliResult {
  int status;
  std::string stderr_text;
};

CliResult suaex_cli(const std::string& args, const fs::path& dir) {
  const fs::path err = dir / "stderr.txt";
  const std::string cmd =
      std::string("\"") + SUAEX_CLI_PATH + "\" " + args + " 2> \"" + err.string() + "\"";
  int status = std::system(cmd.c_str());
  return {status, slurp(err)};
}

// A small, quick configuration over the golden data, writing into `dir`.
std::string quick_config(const std::string& extra = "") {
  return "[paths]\n"
         "raw_corpus = " + (kGolden / "raw.txt").string() + "\n"
         "test_data = test.tsv\n"
         "model = model.txt\n"
         "output1 = output1.tsv\n"
         "output2 = output2.tsv\n"
         "aspects = aspects.tsv\n"
         "eval_report = eval.tsv\n"
         "plot_data = plot.csv\n"
         "expanded_groups = groups.tsv\n"
         "\n[train]\ndimensions = 32\nepochs = 3\nseed = 5\n"
         "\n[attention]\nexpand_k = 2\n"
         "\n[classify]\ntop_n = 5\n"
         "\n[groups]\nfood = food\nstaff = staff\nambience = ambience\n" +
         extra;
}

TEST(Config, ParsesSectionsAndResolvesPaths) {
  std::istringstream in(
      "; comment\n# another\n[paths]\nmodel = out/m.txt\nraw_corpus = /abs/raw.txt\n"
      "[preprocess]\nstemmer = suffix_stripping\nmin_token_length = 2\n"
      "[train]\ndimensions = 50\nlearning_rate = 0.05\nsubsample = 0.001\n"
      "[attention]\nsimilarity = contextual\ncontext_weight = 0.7\ngroup_combine = max\n"
      "[classify]\naggregation = max\naspect_weight = frequency\ntop_n = 7\n"
      "[filter]\nkeywords = pizza, waiter\n[run]\nthreads = 2\n"
      "[groups]\nfood = Food, pizzas\nstaff = staff\n"
      "[label_unions]\nall = food, staff\n");
  auto cfg = parse_config(in, "/base");
  EXPECT_EQ(cfg.paths.model, fs::path("/base/out/m.txt"));
  EXPECT_EQ(cfg.paths.raw_corpus, fs::path("/abs/raw.txt"));
  EXPECT_EQ(cfg.preprocess.stemmer, Stemmer::kSuffixStripping);
  EXPECT_EQ(cfg.preprocess.min_token_length, 2);
  EXPECT_EQ(cfg.train.dimensions, 50);
  EXPECT_EQ(cfg.train.initial_learning_rate, 0.05);
  EXPECT_EQ(cfg.train.subsample, 0.001);
  EXPECT_EQ(cfg.train.threads, 2);
  EXPECT_EQ(cfg.similarity.kind, SimilarityMode::Kind::kContextual);
  EXPECT_EQ(cfg.similarity.context_weight, 0.7);
  EXPECT_EQ(cfg.group_combine, GroupCombine::kMax);
  EXPECT_EQ(cfg.aggregation, AggregationMode::kMax);
  EXPECT_EQ(cfg.aspect_weight, AspectWeight::kFrequency);
  EXPECT_EQ(cfg.top_n, 7u);
  EXPECT_EQ(cfg.filter_keywords, (std::set<std::string>{"pizza", "waiter"}));
  ASSERT_EQ(cfg.groups.size(), 2u);
  // Group words go through the same preprocessing as the corpus.
  EXPECT_EQ(cfg.groups[0].words, (std::vector<std::string>{"food", "pizza"}));
  EXPECT_EQ(cfg.categories(), (std::vector<std::string>{"food", "staff"}));
  EXPECT_TRUE(cfg.label_space().is_gold_label("all"));
}

TEST(Config, Defaults) {
  std::istringstream in("[groups]\nfood = food\n");
  auto cfg = parse_config(in, ".");
  EXPECT_EQ(cfg.train.dimensions, 200);
  EXPECT_EQ(cfg.train.window, 5);
  EXPECT_EQ(cfg.train.negative_samples, 5);
  EXPECT_EQ(cfg.train.epochs, 15);
  EXPECT_EQ(cfg.train.min_count, 5);
  EXPECT_EQ(cfg.aggregation, AggregationMode::kMean);
  EXPECT_EQ(cfg.similarity.kind, SimilarityMode::Kind::kDirect);
  EXPECT_EQ(cfg.threads, 1);
}

TEST(Config, Errors) {
  for (const char* text : {
           "[groups]\nfood = food\n[train]\ndimension = 3\n",        // misspelt key
           "[groups]\nfood = food\n[bogus]\nx = 1\n",                // unknown section
           "[groups]\nfood = the\n",                                 // stopword seed
           "[groups]\n",                                             // no groups
           "[groups]\nfood = food\n[train]\nepochs = many\n",        // not a number
           "[groups]\nfood = food\n[train]\nwindow = 0\n",           // invalid value
           "[groups]\nfood = food\n[attention]\nsimilarity = cos\n", // unknown choice
           "[groups]\nfood = food\n[label_unions]\nx = drinks\n",    // unknown member
           "[groups]\nfood = food\n[preprocess]\nlowercase = maybe\n",
       }) {
    std::istringstream in(text);
    EXPECT_THROW(parse_config(in, "."), ConfigError) << text;
  }
}

TEST(Subcommands, Names) {
  for (const char* name :
       {"filter", "train", "expand", "annotate", "classify", "aspects", "eval", "bench", "pipeline"}) {
    auto cmd = parse_subcommand(name);
    ASSERT_TRUE(cmd.has_value()) << name;
    EXPECT_STREQ(subcommand_name(*cmd), name);
  }
  EXPECT_FALSE(parse_subcommand("nope").has_value());
}

TEST(Golden, CheckedInCorpusMatchesGenerator) {
  const auto docs = synth::golden_raw_corpus(600, 20190414);
  std::string expected;
  for (const auto& d : docs) expected += d + "\n";
  EXPECT_EQ(slurp(kGolden / "raw.txt"), expected);
}

TEST(Cli, ConfigErrorCreatesNoOutput) {
  TempDir dir("config_error");
  fs::copy(kGolden / "test.tsv", dir.path() / "test.tsv");
  write_file(dir.path() / "bad.ini", quick_config("[train]\nwindw = 3\n"));
  auto r = suaex_cli("pipeline -c \"" + (dir.path() / "bad.ini").string() + "\"", dir.path());
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.stderr_text.find("ConfigError"), std::string::npos) << r.stderr_text;

  // Semantically incomplete config: annotate before any model exists.
  write_file(dir.path() / "ok.ini", quick_config());
  r = suaex_cli("annotate -c \"" + (dir.path() / "ok.ini").string() + "\"", dir.path());
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.stderr_text.find("paths.model"), std::string::npos) << r.stderr_text;

  for (const char* out : {"model.txt", "output1.tsv", "output2.tsv", "aspects.tsv", "eval.tsv",
                          "plot.csv", "groups.tsv"}) {
    EXPECT_FALSE(fs::exists(dir.path() / out)) << out;
  }
}

TEST(Cli, TrainTwiceIsByteIdentical) {
  TempDir dir("train_twice");
  fs::copy(kGolden / "test.tsv", dir.path() / "test.tsv");
  write_file(dir.path() / "c.ini", quick_config());
  const std::string args = "train --threads 1 -c \"" + (dir.path() / "c.ini").string() + "\"";
  ASSERT_EQ(suaex_cli(args, dir.path()).status, 0);
  const std::string first = slurp(dir.path() / "model.txt");
  ASSERT_EQ(suaex_cli(args, dir.path()).status, 0);
  EXPECT_FALSE(first.empty());
  EXPECT_EQ(slurp(dir.path() / "model.txt"), first);

  ASSERT_EQ(suaex_cli(args + " --seed 6", dir.path()).status, 0);
  EXPECT_NE(slurp(dir.path() / "model.txt"), first);
}

TEST(Cli, EvalRejectsUnknownGoldLabel) {
  TempDir dir("unknown_gold");
  std::string test = slurp(kGolden / "test.tsv");
  test += "The price was fair.\tprice\n";
  write_file(dir.path() / "test.tsv", test);
  write_file(dir.path() / "c.ini", quick_config());
  const std::string cfg = " -c \"" + (dir.path() / "c.ini").string() + "\"";
  for (const char* stage : {"train", "expand", "annotate", "classify"}) {
    ASSERT_EQ(suaex_cli(std::string(stage) + cfg, dir.path()).status, 0) << stage;
  }
  auto r = suaex_cli("eval" + cfg, dir.path());
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.stderr_text.find("UnknownGoldLabel"), std::string::npos) << r.stderr_text;
  EXPECT_FALSE(fs::exists(dir.path() / "eval.tsv"));
}

TEST(Cli, PipelineEqualsComposedSubcommands) {
  TempDir composed("composed");
  TempDir whole("whole");
  for (const auto* dir : {&composed, &whole}) {
    fs::copy(kGolden / "test.tsv", dir->path() / "test.tsv");
    write_file(dir->path() / "c.ini", quick_config());
  }
  const auto cfg = [](const TempDir& d) {
    return " --threads 1 -c \"" + (d.path() / "c.ini").string() + "\"";
  };
  for (const char* stage : {"train", "expand", "annotate", "classify", "aspects", "eval"}) {
    ASSERT_EQ(suaex_cli(stage + cfg(composed), composed.path()).status, 0) << stage;
  }
  ASSERT_EQ(suaex_cli("pipeline" + cfg(whole), whole.path()).status, 0);
  for (const char* artifact : {"model.txt", "groups.tsv", "output1.tsv", "output2.tsv",
                               "aspects.tsv", "eval.tsv", "plot.csv"}) {
    const std::string a = slurp(composed.path() / artifact);
    EXPECT_FALSE(a.empty()) << artifact;
    EXPECT_EQ(a, slurp(whole.path() / artifact)) << artifact;
  }
}

TEST(Cli, FilterThenTrain) {
  TempDir dir("filter");
  fs::copy(kGolden / "test.tsv", dir.path() / "test.tsv");
  write_file(dir.path() / "c.ini",
             quick_config("[filter]\nkeywords = pizza, waiter\n") +
                 "");
  // filtered_corpus lives in [paths]; append it by rewriting the section.
  std::string text = slurp(dir.path() / "c.ini");
  text.insert(text.find("test_data"), "filtered_corpus = filtered.txt\n");
  write_file(dir.path() / "c.ini", text);
  const std::string cfg = " -c \"" + (dir.path() / "c.ini").string() + "\"";
  ASSERT_EQ(suaex_cli("filter" + cfg, dir.path()).status, 0);
  std::ifstream in(dir.path() / "filtered.txt");
  std::string line;
  std::size_t kept = 0;
  while (std::getline(in, line)) {
    ++kept;
    auto tokens = preprocess(line, PreprocessConfig::Defaults());
    EXPECT_TRUE(std::find(tokens.begin(), tokens.end(), "pizza") != tokens.end() ||
                std::find(tokens.begin(), tokens.end(), "waiter") != tokens.end())
        << line;
  }
  EXPECT_GT(kept, 0u);
  EXPECT_LT(kept, 1800u);
  ASSERT_EQ(suaex_cli("train" + cfg, dir.path()).status, 0);
}

TEST(Cli, BenchWritesTimingReport) {
  TempDir dir("bench");
  fs::copy(kGolden / "test.tsv", dir.path() / "test.tsv");
  std::string text = quick_config();
  text.insert(text.find("test_data"), "timing_report = timing.tsv\n");
  write_file(dir.path() / "c.ini", text);
  ASSERT_EQ(suaex_cli("bench -c \"" + (dir.path() / "c.ini").string() + "\"", dir.path()).status,
            0);
  const std::string report = slurp(dir.path() / "timing.tsv");
  EXPECT_EQ(report.rfind("stage\tseconds\tsentences\tthroughput\n", 0), 0u);
  for (const char* stage : {"preprocess", "train", "annotate", "classify", "evaluate",
                            "annotate+classify"}) {
    EXPECT_NE(report.find(std::string("\n") + stage + "\t"), std::string::npos) << stage;
  }
}

}  // namespace
}  // namespace suaex
