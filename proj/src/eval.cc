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

#include "offlang/eval.h"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "offlang/errors.h"

namespace offlang {

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> classes)
    : classes_(std::move(classes)),
      counts_(classes_.size() * classes_.size(), 0) {}

void ConfusionMatrix::add(int gold, int predicted) {
  const auto k = static_cast<int>(classes_.size());
  if (gold < 0 || gold >= k || predicted < 0 || predicted >= k) {
    throw ArgumentError("confusion matrix: class index out of range");
  }
  ++counts_[static_cast<std::size_t>(gold * k + predicted)];
  ++total_;
}

std::size_t ConfusionMatrix::count(int gold, int predicted) const {
  return counts_.at(static_cast<std::size_t>(gold) * classes_.size() +
                    static_cast<std::size_t>(predicted));
}

std::size_t ConfusionMatrix::trace() const {
  std::size_t t = 0;
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    t += counts_[i * classes_.size() + i];
  }
  return t;
}

ClassMetrics metrics(std::span<const int> gold, std::span<const int> pred,
                     const std::vector<std::string> &classes) {
  if (gold.size() != pred.size()) {
    throw ArgumentError("metrics: " + std::to_string(gold.size()) +
                        " gold labels vs " + std::to_string(pred.size()) +
                        " predictions");
  }
  if (gold.empty()) throw ArgumentError("metrics: no samples");
  ClassMetrics m;
  m.classes = classes;
  m.confusion = ConfusionMatrix(classes);
  for (std::size_t i = 0; i < gold.size(); ++i) m.confusion.add(gold[i], pred[i]);

  const auto k = static_cast<int>(classes.size());
  double f1_sum = 0.0;
  for (int c = 0; c < k; ++c) {
    std::size_t tp = m.confusion.count(c, c);
    std::size_t gold_c = 0;
    std::size_t pred_c = 0;
    for (int o = 0; o < k; ++o) {
      gold_c += m.confusion.count(c, o);
      pred_c += m.confusion.count(o, c);
    }
    const double p = pred_c == 0 ? 0.0 : static_cast<double>(tp) / pred_c;
    const double r = gold_c == 0 ? 0.0 : static_cast<double>(tp) / gold_c;
    const double f = (p + r) == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
    m.precision.push_back(p);
    m.recall.push_back(r);
    m.f1.push_back(f);
    m.support.push_back(gold_c);
    f1_sum += f;
  }
  m.macro_f1 = k == 0 ? 0.0 : f1_sum / k;
  m.accuracy = static_cast<double>(m.confusion.trace()) /
               static_cast<double>(m.confusion.total());
  return m;
}

ClassMetrics metrics(const std::vector<std::string> &gold,
                     const std::vector<std::string> &pred,
                     const std::vector<std::string> &classes) {
  const auto index = [&](const std::string &label) {
    const auto it = std::find(classes.begin(), classes.end(), label);
    if (it == classes.end()) throw ArgumentError("metrics: unknown label '" + label + "'");
    return static_cast<int>(it - classes.begin());
  };
  std::vector<int> g, p;
  for (const auto &x : gold) g.push_back(index(x));
  for (const auto &x : pred) p.push_back(index(x));
  return metrics(g, p, classes);
}

std::string format_report(const ClassMetrics &m, const std::string &title) {
  std::ostringstream out;
  char buf[128];
  out << title << "\n";
  int width = 8;
  for (const auto &c : m.classes) width = std::max(width, static_cast<int>(c.size()));
  std::snprintf(buf, sizeof(buf), "%-*s %8s %8s %8s %8s\n", width, "class", "R",
                "P", "F1", "support");
  out << buf;
  for (std::size_t c = 0; c < m.classes.size(); ++c) {
    std::snprintf(buf, sizeof(buf), "%-*s %8.3f %8.3f %8.3f %8zu\n", width,
                  m.classes[c].c_str(), m.recall[c], m.precision[c], m.f1[c],
                  m.support[c]);
    out << buf;
  }
  std::snprintf(buf, sizeof(buf), "macro-F1 %.3f  accuracy %.3f  n=%zu\n",
                m.macro_f1, m.accuracy, m.confusion.total());
  out << buf;
  return out.str();
}

std::string format_key_values(const ClassMetrics &m) {
  std::ostringstream out;
  char buf[64];
  const auto put = [&](const std::string &key, double v) {
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    out << key << "=" << buf << "\n";
  };
  put("macro_f1", m.macro_f1);
  put("accuracy", m.accuracy);
  out << "n=" << m.confusion.total() << "\n";
  for (std::size_t c = 0; c < m.classes.size(); ++c) {
    put("precision." + m.classes[c], m.precision[c]);
    put("recall." + m.classes[c], m.recall[c]);
    put("f1." + m.classes[c], m.f1[c]);
    out << "support." << m.classes[c] << "=" << m.support[c] << "\n";
  }
  return out.str();
}

nlohmann::json metrics_to_json(const ClassMetrics &m) {
  nlohmann::json per_class = nlohmann::json::object();
  nlohmann::json confusion = nlohmann::json::array();
  for (std::size_t c = 0; c < m.classes.size(); ++c) {
    per_class[m.classes[c]] = {{"precision", m.precision[c]},
                               {"recall", m.recall[c]},
                               {"f1", m.f1[c]},
                               {"support", m.support[c]}};
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t p = 0; p < m.classes.size(); ++p) {
      row.push_back(m.confusion.count(static_cast<int>(c), static_cast<int>(p)));
    }
    confusion.push_back(row);
  }
  return {{"classes", m.classes},
          {"macro_f1", m.macro_f1},
          {"accuracy", m.accuracy},
          {"n", m.confusion.total()},
          {"per_class", per_class},
          {"confusion", confusion}};
}

ClassMetrics evaluate(const Predictor &model, const Dataset &test) {
  const Dataset restricted = test.restrict_to(model.task());
  if (restricted.empty()) {
    throw InsufficientDataError("no test posts apply to task " +
                                std::string(to_string(model.task())));
  }
  const auto posts = restricted.posts();
  const auto pred = model.predict(posts);
  const auto gold = restricted.task_labels(model.task());
  return metrics(gold, pred, task_classes(model.task()));
}

std::vector<HierLabel> run_pipeline(const Predictor &a, const Predictor &b,
                                    const Predictor &c,
                                    std::span<const Post> posts) {
  if (a.task() != Task::kA || b.task() != Task::kB || c.task() != Task::kC) {
    throw ArgumentError("run_pipeline: models must be trained for tasks A, B, C");
  }
  std::vector<HierLabel> out(posts.size());
  const auto pa = a.predict(posts);

  std::vector<std::size_t> off_idx;
  std::vector<Post> off_posts;
  for (std::size_t i = 0; i < posts.size(); ++i) {
    if (pa[i] == static_cast<int>(LabelA::kOff)) {
      off_idx.push_back(i);
      off_posts.push_back(posts[i]);
    }
  }
  if (off_posts.empty()) return out;
  const auto pb = b.predict(off_posts);

  std::vector<std::size_t> tin_idx;
  std::vector<Post> tin_posts;
  for (std::size_t j = 0; j < off_idx.size(); ++j) {
    const auto lb = static_cast<LabelB>(pb[j]);
    out[off_idx[j]] = HierLabel{LabelA::kOff, lb, std::nullopt};
    if (lb == LabelB::kTin) {
      tin_idx.push_back(off_idx[j]);
      tin_posts.push_back(posts[off_idx[j]]);
    }
  }
  if (tin_posts.empty()) return out;
  const auto pc = c.predict(tin_posts);
  for (std::size_t j = 0; j < tin_idx.size(); ++j) {
    out[tin_idx[j]].c = static_cast<LabelC>(pc[j]);
  }
  return out;
}

const std::vector<std::string> &label_patterns() {
  static const std::vector<std::string> patterns{
      "NOT", "OFF-UNT", "OFF-TIN-IND", "OFF-TIN-GRP", "OFF-TIN-OTH"};
  return patterns;
}

ClassMetrics evaluate_pipeline(const Predictor &a, const Predictor &b,
                               const Predictor &c, const Dataset &test) {
  const auto posts = test.posts();
  const auto predicted = run_pipeline(a, b, c, posts);
  std::vector<std::string> gold, pred;
  for (std::size_t i = 0; i < test.size(); ++i) {
    gold.push_back(test[i].label.pattern());
    pred.push_back(predicted[i].pattern());
  }
  return metrics(gold, pred, label_patterns());
}

}  // namespace offlang
