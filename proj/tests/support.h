// Copyright 2026 The offlang Authors.
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

#ifndef OFFLANG_TESTS_SUPPORT_H_
#define OFFLANG_TESTS_SUPPORT_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "offlang/corpus.h"
#include "offlang/embeddings.h"
#include "offlang/labels.h"

namespace offlang::testing {

// Posts generated from a fixed neutral vocabulary; a post is offensive iff
// it contains a profanity term. Offensive posts get a random B/C label so
// every task has all classes.
struct KeywordCorpus {
  Dataset data;
  std::vector<std::string> profanity;
  std::vector<std::string> neutral;
};

KeywordCorpus keyword_corpus(std::size_t n, std::uint64_t seed,
                             double offensive_rate = 0.35);

// Dataset whose label patterns occur with the given counts, in order. Post
// texts are filler.
Dataset from_counts(const std::vector<std::pair<HierLabel, std::size_t>> &counts,
                    const std::string &name);

// Label distribution of the annotated Danish data.
Dataset danish_train_distribution();
Dataset danish_test_distribution();

// Random frozen embedding over the corpus vocabulary.
EmbeddingMatrix frozen_embedding(const Dataset &data, std::size_t dim,
                                 std::uint64_t seed);

// Fresh empty directory under the system temp dir.
std::filesystem::path temp_dir(const std::string &name);

}  // namespace offlang::testing

#endif  // OFFLANG_TESTS_SUPPORT_H_
