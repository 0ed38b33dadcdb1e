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

// Regenerates the raw training corpus of the golden dataset:
//   suaex-make-golden tests/data/golden/raw.txt

#include <fstream>
#include <iostream>

#include "synth/synthetic.hpp"

namespace {
constexpr std::size_t kDocsPerTopic = 600;
constexpr std::uint64_t kSeed = 20190414;
}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: " << argv[0] << " <raw corpus output path>\n";
    return 1;
  }
  std::ofstream out(argv[1], std::ios::binary);
  if (!out) {
    std::cerr << "cannot open " << argv[1] << '\n';
    return 1;
  }
  for (const auto& doc : suaex::synth::golden_raw_corpus(kDocsPerTopic, kSeed)) out << doc << '\n';
  return out ? 0 : 1;
}
