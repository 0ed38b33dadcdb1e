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

// Config-driven orchestration of the extraction pipeline. Every stage reads
// its inputs from disk and writes its artifact to disk, so `pipeline` is
// exactly the stages run one after another.

#ifndef SUAEX_PIPELINE_HPP_
#define SUAEX_PIPELINE_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "suaex/attention.hpp"
#include "suaex/cbow.hpp"
#include "suaex/classify.hpp"
#include "suaex/corpus.hpp"
#include "suaex/eval.hpp"

namespace suaex {

struct PipelinePaths {
  std::filesystem::path raw_corpus;
  std::filesystem::path filtered_corpus;  // optional; enables the filter stage
  std::filesystem::path test_data;
  std::filesystem::path model;
  std::filesystem::path expanded_groups;  // required when expand_k > 0
  std::filesystem::path output1;
  std::filesystem::path output2;
  std::filesystem::path aspects;
  std::filesystem::path eval_report;
  std::filesystem::path plot_data;        // optional
  std::filesystem::path timing_report;
  std::filesystem::path stopwords;        // optional; built-in list otherwise
};

struct PipelineConfig {
  PipelinePaths paths;
  PreprocessConfig preprocess = PreprocessConfig::Defaults();
  TrainConfig train;
  // Seed groups, words already normalized with `preprocess`.
  std::vector<ReferenceGroup> groups;
  SimilarityMode similarity = SimilarityMode::Direct();
  GroupCombine group_combine = GroupCombine::kCentroid;
  AggregationMode aggregation = AggregationMode::kMean;
  AspectWeight aspect_weight = AspectWeight::kAttentionMass;
  std::set<std::string> filter_keywords;
  std::size_t top_n = 50;
  std::size_t expand_k = 0;
  std::vector<std::pair<std::string, std::vector<std::string>>> label_unions;
  // Worker threads for training and annotation; 1 is reproducible.
  int threads = 1;

  std::vector<std::string> categories() const;
  LabelSpace label_space() const;
};

// INI-style key-value document; see README.md for the grammar. Relative paths
// are resolved against `base_dir`. Throws ConfigError.
PipelineConfig parse_config(std::istream& in, const std::filesystem::path& base_dir);
PipelineConfig load_config(const std::filesystem::path& path);

enum class Subcommand {
  kFilter,
  kTrain,
  kExpand,
  kAnnotate,
  kClassify,
  kAspects,
  kEval,
  kBench,
  kPipeline,
};

std::optional<Subcommand> parse_subcommand(const std::string& name);
const char* subcommand_name(Subcommand cmd);

// Checks everything the subcommand needs before any file is touched: the
// output paths it writes are configured and the external inputs exist.
// Throws ConfigError.
void validate_for(const PipelineConfig& cfg, Subcommand cmd);

// Runs one subcommand. Progress lines go to `log` when non-null. Throws the
// owning module's error on failure.
void run(Subcommand cmd, const PipelineConfig& cfg, std::ostream* log = nullptr);

// Individual stages, as run by the subcommands.
std::size_t run_filter(const PipelineConfig& cfg);
EmbeddingModel run_train(const PipelineConfig& cfg);
std::vector<ReferenceGroup> run_expand(const PipelineConfig& cfg);
std::vector<AnnotatedSentence> run_annotate(const PipelineConfig& cfg);
std::vector<CategoryAssignment> run_classify(const PipelineConfig& cfg);
AspectLexicon run_aspects(const PipelineConfig& cfg);
EvalReport run_eval(const PipelineConfig& cfg);
TimingReport run_bench(const PipelineConfig& cfg);

// Tokenized training sentences from a line corpus: sentence splitting, then
// tokenize + normalize.
std::vector<std::vector<std::string>> read_training_sentences(
    const std::filesystem::path& corpus, const PreprocessConfig& preprocess);

// Test sentences with tokens filled in.
std::vector<Sentence> read_test_sentences(const std::filesystem::path& test_data,
                                          const PreprocessConfig& preprocess);

// Groups used for annotation: the expanded file when expand_k > 0, the seed
// groups otherwise.
std::vector<ReferenceGroup> annotation_groups(const PipelineConfig& cfg);

}  // namespace suaex

#endif  // SUAEX_PIPELINE_HPP_
