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

#ifndef OFFLANG_ANALYSIS_H_
#define OFFLANG_ANALYSIS_H_

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "offlang/corpus.h"
#include "offlang/features.h"
#include "offlang/labels.h"
#include "offlang/predictor.h"

namespace offlang {

// Posts whose gold class `gold` was predicted as `predicted`.
struct ErrorSlice {
  int gold = 0;
  int predicted = 0;
  std::string gold_label;
  std::string predicted_label;
  std::vector<Post> posts;
};

// One slice per (gold, predicted) pair with gold != predicted, ordered by
// gold then predicted class index. Posts without a label for `task` are
// skipped.
std::vector<ErrorSlice> error_slices(const Predictor &model,
                                     const Dataset &test, Task task);
std::vector<ErrorSlice> error_slices(std::span<const int> predictions,
                                     const Dataset &test, Task task);

struct ScoredNgram {
  std::string ngram;
  double score = 0.0;

  friend bool operator==(const ScoredNgram &, const ScoredNgram &) = default;
};

// Ranks n-grams by their mean TF-IDF weight over the slice, with idf taken
// from `background`. Only n-grams occurring in the slice are returned;
// equal scores are ordered alphabetically.
std::vector<ScoredNgram> top_ngrams(const ErrorSlice &slice,
                                    const Dataset &background,
                                    NgramRange range, std::size_t k,
                                    NgramMode mode = NgramMode::kWord);

struct LengthStats {
  double mean = 0.0;
  double median = 0.0;
};

// Character (code point) length statistics of the slice.
LengthStats length_stats(const ErrorSlice &slice);

struct AnalysisOptions {
  NgramRange range{1, 2};
  NgramMode mode = NgramMode::kWord;
  std::size_t k = 20;
};

struct SliceReport {
  ErrorSlice slice;
  std::vector<ScoredNgram> ngrams;
  LengthStats lengths;
};

std::vector<SliceReport> analyze_errors(std::span<const int> predictions,
                                        const Dataset &test, Task task,
                                        const AnalysisOptions &options = {});

std::string format_analysis(const std::vector<SliceReport> &reports);
nlohmann::json analysis_to_json(const std::vector<SliceReport> &reports);

}  // namespace offlang

#endif  // OFFLANG_ANALYSIS_H_
