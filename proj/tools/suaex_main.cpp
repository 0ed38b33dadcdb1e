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

// suaex <subcommand> --config <path> [--threads N] [--seed N]

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "suaex/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Similarity-based unsupervised aspect and category extraction"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<int> threads;
  std::optional<std::uint64_t> seed;
  app.add_option("-c,--config", config_path, "pipeline configuration file")->required();
  app.add_option("--threads", threads, "worker threads (1 = reproducible)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "random seed for training");

  const std::pair<const char*, const char*> commands[] = {
      {"filter", "keep raw documents that mention a filter keyword"},
      {"train", "train CBOW embeddings on the (filtered) corpus"},
      {"expand", "expand reference groups with nearest neighbours"},
      {"annotate", "score test sentences against reference groups (Output1)"},
      {"classify", "assign a category to each annotated sentence (Output2)"},
      {"aspects", "extract the per-category aspect lexicon"},
      {"eval", "precision / recall / F1 against the gold labels"},
      {"bench", "timed end-to-end run, writes the timing report"},
      {"pipeline", "run every stage in order"},
  };
  for (const auto& [name, help] : commands) {
    app.add_subcommand(name, help)->fallthrough();
  }

  CLI11_PARSE(app, argc, argv);

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    suaex::PipelineConfig cfg = suaex::load_config(config_path);
    if (threads) {
      cfg.threads = *threads;
      cfg.train.threads = *threads;
    }
    if (seed) cfg.train.seed = *seed;
    suaex::run(*suaex::parse_subcommand(name), cfg, &std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "suaex " << name << ": " << e.what() << '\n';
    return 1;
  }
  return 0;
}
