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

#ifndef OFFLANG_EVAL_H_
#define OFFLANG_EVAL_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "offlang/corpus.h"
#include "offlang/labels.h"
#include "offlang/predictor.h"

namespace offlang {

// Rows are gold classes, columns predicted classes.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(std::vector<std::string> classes);

  void add(int gold, int predicted);
  std::size_t count(int gold, int predicted) const;
  std::size_t total() const { return total_; }
  const std::vector<std::string> &classes() const { return classes_; }
  std::size_t trace() const;

 private:
  std::vector<std::string> classes_;
  std::vector<std::size_t> counts_;
  std::size_t total_ = 0;
};

struct ClassMetrics {
  std::vector<std::string> classes;
  std::vector<double> precision;
  std::vector<double> recall;
  std::vector<double> f1;
  std::vector<std::size_t> support;
  double macro_f1 = 0.0;
  double accuracy = 0.0;
  ConfusionMatrix confusion{{}};
};

// Per-class P/R/F1 (0 where undefined) and their unweighted macro mean over
// every listed class.
ClassMetrics metrics(std::span<const int> gold, std::span<const int> pred,
                     const std::vector<std::string> &classes);
ClassMetrics metrics(const std::vector<std::string> &gold,
                     const std::vector<std::string> &pred,
                     const std::vector<std::string> &classes);

// Human-readable R/P/F1 table plus macro-F1.
std::string format_report(const ClassMetrics &m, const std::string &title);
// `key=value` lines, e.g. `f1.NOT=0.934222`.
std::string format_key_values(const ClassMetrics &m);
// Same content as JSON, including the confusion matrix.
nlohmann::json metrics_to_json(const ClassMetrics &m);

// Scores a single-task model on the gold-restricted subset of `test`.
ClassMetrics evaluate(const Predictor &model, const Dataset &test);

// Cascade A -> B -> C: B only sees posts predicted OFF, C only posts
// predicted TIN.
std::vector<HierLabel> run_pipeline(const Predictor &a, const Predictor &b,
                                    const Predictor &c,
                                    std::span<const Post> posts);

// The five label patterns in a fixed order.
const std::vector<std::string> &label_patterns();

// End-to-end scoring over full label patterns.
ClassMetrics evaluate_pipeline(const Predictor &a, const Predictor &b,
                               const Predictor &c, const Dataset &test);

}  // namespace offlang

#endif  // OFFLANG_EVAL_H_
