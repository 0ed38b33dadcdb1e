#!/usr/bin/env python3
# Copyright 2026 The SUAEx-cpp Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes a gensim-trained word2vec text model plus its nearest neighbours.

The outputs are checked into tests/data/reference_vectors/ and used to check
that suaex loads third-party vector files and ranks neighbours identically.

    python3 tools/fixtures/make_reference_vectors.py tests/data/reference_vectors
"""

import pathlib
import random
import sys

from gensim.models import Word2Vec

PROBES = ["apple", "bolt", "pear", "wrench", "fruit"]


def corpus(seed=7, per_topic=300):
    rng = random.Random(seed)
    topics = [["apple", "pear", "fruit", "plum"], ["bolt", "nut", "wrench", "screw"]]
    fillers = ["the", "a", "and", "with", "some", "very"]
    out = []
    for _ in range(per_topic):
        for words in topics:
            n = rng.randint(6, 10)
            out.append([rng.choice(words) if rng.random() < 0.75 else rng.choice(fillers)
                        for _ in range(n)])
    return out


def main(out_dir):
    out = pathlib.Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    model = Word2Vec(corpus(), vector_size=16, window=5, min_count=5, sg=0,
                     negative=5, epochs=15, seed=1, workers=1)
    model.wv.save_word2vec_format(str(out / "vectors.txt"), binary=False)
    with open(out / "neighbours.tsv", "w") as f:
        for probe in PROBES:
            for word, sim in model.wv.most_similar(probe, topn=5):
                f.write(f"{probe}\t{word}\t{sim:.6f}\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/data/reference_vectors")
