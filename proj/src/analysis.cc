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

#include "offlang/analysis.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "offlang/errors.h"
#include "offlang/text.h"

namespace offlang {

std::vector<ErrorSlice> error_slices(const Predictor &model,
                                     const Dataset &test, Task task) {
  if (model.task() != task) {
    throw ArgumentError("error_slices: model was trained for task " +
                        std::string(to_string(model.task())));
  }
  const Dataset restricted = test.restrict_to(task);
  const std::vector<Post> posts = restricted.posts();
  const std::vector<int> pred = model.predict(posts);
  return error_slices(pred, restricted, task);
}

std::vector<ErrorSlice> error_slices(std::span<const int> predictions,
                                     const Dataset &test, Task task) {
  const Dataset restricted = test.restrict_to(task);
  if (predictions.size() != restricted.size()) {
    throw ArgumentError("error_slices: " + std::to_string(predictions.size()) +
                        " predictions for " + std::to_string(restricted.size()) +
                        " labeled posts");
  }
  const auto gold = restricted.task_labels(task);
  const auto names = task_classes(task);
  std::map<std::pair<int, int>, ErrorSlice> slices;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const int p = predictions[i];
    if (p < 0 || static_cast<std::size_t>(p) >= names.size()) {
      throw ArgumentError("error_slices: prediction out of range");
    }
    if (p == gold[i]) continue;
    ErrorSlice &s = slices[{gold[i], p}];
    s.gold = gold[i];
    s.predicted = p;
    s.gold_label = names[static_cast<std::size_t>(gold[i])];
    s.predicted_label = names[static_cast<std::size_t>(p)];
    s.posts.push_back(restricted[i].post);
  }
  std::vector<ErrorSlice> out;
  for (auto &[key, s] : slices) out.push_back(std::move(s));
  return out;
}

std::vector<ScoredNgram> top_ngrams(const ErrorSlice &slice,
                                    const Dataset &background,
                                    NgramRange range, std::size_t k,
                                    NgramMode mode) {
  if (slice.posts.empty()) throw ArgumentError("top_ngrams: empty slice");
  std::vector<TokenList> docs;
  for (const auto &item : background.items()) docs.push_back(tokenize(item.post.text));
  if (docs.empty()) {
    for (const auto &p : slice.posts) docs.push_back(tokenize(p.text));
  }
  const TfIdfModel model = TfIdfModel::fit(docs, range, mode, 1);

  std::vector<double> sum(model.size(), 0.0);
  for (const auto &p : slice.posts) {
    for (const auto &e : model.transform(tokenize(p.text))) sum[e.index] += e.value;
  }
  std::vector<ScoredNgram> ranked;
  const double n = static_cast<double>(slice.posts.size());
  for (std::size_t c = 0; c < sum.size(); ++c) {
    if (sum[c] > 0.0) ranked.push_back({model.terms()[c], sum[c] / n});
  }
  // Columns are already alphabetical, so a stable sort keeps ties in order.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const ScoredNgram &a, const ScoredNgram &b) {
                     return a.score > b.score;
                   });
  if (ranked.size() > k) ranked.resize(k);
  return ranked;
}

LengthStats length_stats(const ErrorSlice &slice) {
  if (slice.posts.empty()) throw ArgumentError("length_stats: empty slice");
  std::vector<double> lens;
  lens.reserve(slice.posts.size());
  double total = 0.0;
  for (const auto &p : slice.posts) {
    lens.push_back(static_cast<double>(codepoint_count(p.text)));
    total += lens.back();
  }
  std::sort(lens.begin(), lens.end());
  const std::size_t m = lens.size();
  LengthStats s;
  s.mean = total / static_cast<double>(m);
  s.median = m % 2 == 1 ? lens[m / 2] : 0.5 * (lens[m / 2 - 1] + lens[m / 2]);
  return s;
}

std::vector<SliceReport> analyze_errors(std::span<const int> predictions,
                                        const Dataset &test, Task task,
                                        const AnalysisOptions &options) {
  const Dataset restricted = test.restrict_to(task);
  std::vector<SliceReport> out;
  for (auto &slice : error_slices(predictions, restricted, task)) {
    SliceReport r;
    r.ngrams = top_ngrams(slice, restricted, options.range, options.k, options.mode);
    r.lengths = length_stats(slice);
    r.slice = std::move(slice);
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_analysis(const std::vector<SliceReport> &reports) {
  std::ostringstream os;
  if (reports.empty()) {
    os << "no misclassified posts\n";
    return os.str();
  }
  char buf[128];
  for (const auto &r : reports) {
    os << "gold " << r.slice.gold_label << " -> predicted "
       << r.slice.predicted_label << " (" << r.slice.posts.size() << " posts)\n";
    std::snprintf(buf, sizeof(buf), "  mean chars %.1f, median chars %.1f\n",
                  r.lengths.mean, r.lengths.median);
    os << buf;
    for (std::size_t i = 0; i < r.ngrams.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "  %2zu. %.4f  ", i + 1, r.ngrams[i].score);
      os << buf << r.ngrams[i].ngram << '\n';
    }
  }
  return os.str();
}

nlohmann::json analysis_to_json(const std::vector<SliceReport> &reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto &r : reports) {
    nlohmann::json ngrams = nlohmann::json::array();
    for (const auto &g : r.ngrams) ngrams.push_back({{"ngram", g.ngram}, {"score", g.score}});
    nlohmann::json ids = nlohmann::json::array();
    for (const auto &p : r.slice.posts) ids.push_back(p.id);
    arr.push_back({{"gold", r.slice.gold_label},
                   {"predicted", r.slice.predicted_label},
                   {"count", r.slice.posts.size()},
                   {"post_ids", ids},
                   {"mean_chars", r.lengths.mean},
                   {"median_chars", r.lengths.median},
                   {"top_ngrams", ngrams}});
  }
  return arr;
}

}  // namespace offlang
