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

#include "suaex/pipeline.hpp"

#include <fstream>
#include <ostream>

namespace suaex {
namespace {

namespace fs = std::filesystem;

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

const fs::path& training_corpus(const PipelineConfig& cfg) {
  return cfg.paths.filtered_corpus.empty() ? cfg.paths.raw_corpus : cfg.paths.filtered_corpus;
}

void require_path(const fs::path& p, const char* key) {
  if (p.empty()) throw ConfigError(std::string("paths.") + key + " is required");
}

void require_file(const fs::path& p, const char* key) {
  require_path(p, key);
  if (!fs::is_regular_file(p)) {
    throw ConfigError(std::string("paths.") + key + " does not exist: " + p.string());
  }
}

}  // namespace

std::optional<Subcommand> parse_subcommand(const std::string& name) {
  static const std::pair<const char*, Subcommand> table[] = {
      {"filter", Subcommand::kFilter},     {"train", Subcommand::kTrain},
      {"expand", Subcommand::kExpand},     {"annotate", Subcommand::kAnnotate},
      {"classify", Subcommand::kClassify}, {"aspects", Subcommand::kAspects},
      {"eval", Subcommand::kEval},         {"bench", Subcommand::kBench},
      {"pipeline", Subcommand::kPipeline},
  };
  for (const auto& [n, cmd] : table) {
    if (name == n) return cmd;
  }
  return std::nullopt;
}

const char* subcommand_name(Subcommand cmd) {
  switch (cmd) {
    case Subcommand::kFilter: return "filter";
    case Subcommand::kTrain: return "train";
    case Subcommand::kExpand: return "expand";
    case Subcommand::kAnnotate: return "annotate";
    case Subcommand::kClassify: return "classify";
    case Subcommand::kAspects: return "aspects";
    case Subcommand::kEval: return "eval";
    case Subcommand::kBench: return "bench";
    case Subcommand::kPipeline: return "pipeline";
  }
  return "?";
}

void validate_for(const PipelineConfig& cfg, Subcommand cmd) {
  const auto& p = cfg.paths;
  const bool expanding = cfg.expand_k > 0;
  switch (cmd) {
    case Subcommand::kFilter:
      require_file(p.raw_corpus, "raw_corpus");
      require_path(p.filtered_corpus, "filtered_corpus");
      break;
    case Subcommand::kTrain:
      if (p.filtered_corpus.empty()) {
        require_file(p.raw_corpus, "raw_corpus");
      } else {
        require_file(p.filtered_corpus, "filtered_corpus");
      }
      require_path(p.model, "model");
      break;
    case Subcommand::kExpand:
      require_file(p.model, "model");
      require_path(p.expanded_groups, "expanded_groups");
      break;
    case Subcommand::kAnnotate:
      require_file(p.model, "model");
      require_file(p.test_data, "test_data");
      if (expanding) require_file(p.expanded_groups, "expanded_groups");
      require_path(p.output1, "output1");
      break;
    case Subcommand::kClassify:
      require_file(p.output1, "output1");
      require_path(p.output2, "output2");
      break;
    case Subcommand::kAspects:
      require_file(p.output1, "output1");
      require_file(p.output2, "output2");
      require_path(p.aspects, "aspects");
      break;
    case Subcommand::kEval:
      require_file(p.test_data, "test_data");
      require_file(p.output2, "output2");
      require_path(p.eval_report, "eval_report");
      break;
    case Subcommand::kBench:
      require_file(p.raw_corpus, "raw_corpus");
      require_file(p.test_data, "test_data");
      require_path(p.timing_report, "timing_report");
      break;
    case Subcommand::kPipeline:
      require_file(p.raw_corpus, "raw_corpus");
      require_file(p.test_data, "test_data");
      require_path(p.model, "model");
      if (expanding) require_path(p.expanded_groups, "expanded_groups");
      require_path(p.output1, "output1");
      require_path(p.output2, "output2");
      require_path(p.aspects, "aspects");
      require_path(p.eval_report, "eval_report");
      break;
  }
}

std::vector<std::vector<std::string>> read_training_sentences(
    const fs::path& corpus, const PreprocessConfig& preprocess) {
  std::ifstream in = open_input(corpus);
  std::vector<std::vector<std::string>> sentences;
  for_each_line_document(in, [&](RawDocument doc) {
    for (const Sentence& s : split_sentences(doc)) {
      auto tokens = suaex::preprocess(s.original_text, preprocess);
      if (!tokens.empty()) sentences.push_back(std::move(tokens));
    }
  });
  return sentences;
}

std::vector<Sentence> read_test_sentences(const fs::path& test_data,
                                          const PreprocessConfig& preprocess) {
  std::vector<Sentence> sentences = read_test_data_file(test_data.string());
  for (Sentence& s : sentences) s.tokens = suaex::preprocess(s.original_text, preprocess);
  return sentences;
}

std::vector<ReferenceGroup> annotation_groups(const PipelineConfig& cfg) {
  if (cfg.expand_k == 0) return cfg.groups;
  std::ifstream in = open_input(cfg.paths.expanded_groups);
  std::vector<ReferenceGroup> groups = read_groups(in);
  if (groups.size() != cfg.groups.size()) {
    throw MalformedFile("expanded groups file does not match the configured groups");
  }
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (groups[i].category != cfg.groups[i].category) {
      throw MalformedFile("expanded groups file does not match the configured groups");
    }
  }
  return groups;
}

std::size_t run_filter(const PipelineConfig& cfg) {
  std::ifstream in = open_input(cfg.paths.raw_corpus);
  std::ofstream out = open_output(cfg.paths.filtered_corpus);
  KeywordFilter filter(cfg.filter_keywords, cfg.preprocess.stemmer);
  std::size_t n = filter_corpus(in, out, filter);
  finish(out, cfg.paths.filtered_corpus);
  return n;
}

EmbeddingModel run_train(const PipelineConfig& cfg) {
  auto sentences = read_training_sentences(training_corpus(cfg), cfg.preprocess);
  TrainConfig train = cfg.train;
  train.threads = cfg.threads;
  EmbeddingModel model = train_cbow<double>(sentences, train);
  std::ofstream out = open_output(cfg.paths.model);
  save_model(model, out);
  finish(out, cfg.paths.model);
  return model;
}

std::vector<ReferenceGroup> run_expand(const PipelineConfig& cfg) {
  EmbeddingModel model = load_model<double>(cfg.paths.model.string());
  std::vector<ReferenceGroup> expanded;
  for (const auto& g : cfg.groups) expanded.push_back(expand_references(model, g, cfg.expand_k));
  std::ofstream out = open_output(cfg.paths.expanded_groups);
  write_groups(out, expanded);
  finish(out, cfg.paths.expanded_groups);
  return expanded;
}

std::vector<AnnotatedSentence> run_annotate(const PipelineConfig& cfg) {
  EmbeddingModel model = load_model<double>(cfg.paths.model.string());
  auto groups = annotation_groups(cfg);
  auto sentences = read_test_sentences(cfg.paths.test_data, cfg.preprocess);
  Annotator<double> annotator(model, groups, cfg.similarity, cfg.group_combine);
  auto annotated = annotator.annotate_all(sentences, cfg.threads);
  std::ofstream out = open_output(cfg.paths.output1);
  write_output1(out, annotated);
  finish(out, cfg.paths.output1);
  return annotated;
}

std::vector<CategoryAssignment> run_classify(const PipelineConfig& cfg) {
  std::ifstream in = open_input(cfg.paths.output1);
  auto annotated = read_output1(in);
  auto order = cfg.categories();
  auto assignments = assign_categories(annotated, cfg.aggregation, order);
  std::ofstream out = open_output(cfg.paths.output2);
  write_output2(out, assignments);
  finish(out, cfg.paths.output2);
  return assignments;
}

AspectLexicon run_aspects(const PipelineConfig& cfg) {
  std::ifstream in1 = open_input(cfg.paths.output1);
  auto annotated = read_output1(in1);
  std::ifstream in2 = open_input(cfg.paths.output2);
  auto assignments = read_output2(in2);
  AspectLexicon lexicon = extract_aspects(annotated, assignments, cfg.top_n, cfg.aspect_weight);
  std::ofstream out = open_output(cfg.paths.aspects);
  write_lexicon(out, lexicon);
  finish(out, cfg.paths.aspects);
  return lexicon;
}

EvalReport run_eval(const PipelineConfig& cfg) {
  auto gold = read_test_data_file(cfg.paths.test_data.string());
  std::ifstream in = open_input(cfg.paths.output2);
  auto predictions = read_output2(in);
  EvalReport report = evaluation_report(confusion_counts(predictions, gold, cfg.label_space()));
  std::ofstream out = open_output(cfg.paths.eval_report);
  write_eval_report(out, report);
  finish(out, cfg.paths.eval_report);
  if (!cfg.paths.plot_data.empty()) {
    std::ofstream plot = open_output(cfg.paths.plot_data);
    write_plot_data(plot, report);
    finish(plot, cfg.paths.plot_data);
  }
  return report;
}

TimingReport run_bench(const PipelineConfig& cfg) {
  std::vector<StageTiming> timings;

  StageClock preprocess_clock;
  std::vector<std::vector<std::string>> training;
  {
    std::ifstream in = open_input(cfg.paths.raw_corpus);
    KeywordFilter filter(cfg.filter_keywords, cfg.preprocess.stemmer);
    for_each_line_document(in, [&](RawDocument doc) {
      if (!filter.accepts(doc)) return;
      for (const Sentence& s : split_sentences(doc)) {
        auto tokens = preprocess(s.original_text, cfg.preprocess);
        if (!tokens.empty()) training.push_back(std::move(tokens));
      }
    });
  }
  auto test = read_test_sentences(cfg.paths.test_data, cfg.preprocess);
  timings.push_back({"preprocess", preprocess_clock.seconds(), training.size() + test.size()});

  StageClock train_clock;
  TrainConfig train = cfg.train;
  train.threads = 1;
  EmbeddingModel model = train_cbow<double>(training, train);
  timings.push_back({"train", train_clock.seconds(), training.size()});

  std::vector<ReferenceGroup> groups = cfg.groups;
  if (cfg.expand_k > 0) {
    for (auto& g : groups) g = expand_references(model, g, cfg.expand_k);
  }

  StageClock annotate_clock;
  Annotator<double> annotator(model, groups, cfg.similarity, cfg.group_combine);
  auto annotated = annotator.annotate_all(test, 1);
  timings.push_back({"annotate", annotate_clock.seconds(), test.size()});

  StageClock classify_clock;
  auto order = cfg.categories();
  auto assignments = assign_categories(annotated, cfg.aggregation, order);
  timings.push_back({"classify", classify_clock.seconds(), test.size()});

  StageClock eval_clock;
  evaluation_report(confusion_counts(assignments, test, cfg.label_space()));
  timings.push_back({"evaluate", eval_clock.seconds(), test.size()});

  TimingReport report = runtime_report(timings);
  std::ofstream out = open_output(cfg.paths.timing_report);
  write_timing_report(out, report);
  finish(out, cfg.paths.timing_report);
  return report;
}

void run(Subcommand cmd, const PipelineConfig& cfg, std::ostream* log) {
  validate_for(cfg, cmd);
  auto note = [&](const std::string& line) {
    if (log) *log << line << '\n';
  };
  switch (cmd) {
    case Subcommand::kFilter:
      note("filter: kept " + std::to_string(run_filter(cfg)) + " documents");
      break;
    case Subcommand::kTrain: {
      auto model = run_train(cfg);
      note("train: " + std::to_string(model.size()) + " words x " +
           std::to_string(model.dimensions()) + " dimensions");
      break;
    }
    case Subcommand::kExpand:
      note("expand: wrote " + std::to_string(run_expand(cfg).size()) + " groups");
      break;
    case Subcommand::kAnnotate:
      note("annotate: " + std::to_string(run_annotate(cfg).size()) + " sentences");
      break;
    case Subcommand::kClassify:
      note("classify: " + std::to_string(run_classify(cfg).size()) + " sentences");
      break;
    case Subcommand::kAspects:
      note("aspects: " + std::to_string(run_aspects(cfg).categories.size()) + " categories");
      break;
    case Subcommand::kEval: {
      auto report = run_eval(cfg);
      note("eval: macro F1 " + std::to_string(report.macro.f1));
      break;
    }
    case Subcommand::kBench: {
      auto report = run_bench(cfg);
      note("bench: " + std::string(kAttentionStage) + " " +
           std::to_string(report.attention.seconds) + " s");
      break;
    }
    case Subcommand::kPipeline: {
      static constexpr Subcommand kStages[] = {
          Subcommand::kFilter,   Subcommand::kTrain,   Subcommand::kExpand,
          Subcommand::kAnnotate, Subcommand::kClassify, Subcommand::kAspects,
          Subcommand::kEval};
      for (Subcommand stage : kStages) {
        if (stage == Subcommand::kFilter && cfg.paths.filtered_corpus.empty()) continue;
        if (stage == Subcommand::kExpand && cfg.expand_k == 0) continue;
        run(stage, cfg, log);
      }
      break;
    }
  }
}

}  // namespace suaex
