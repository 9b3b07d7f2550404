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

#include <gtest/gtest.h>

#include <map>

#include "offlang/errors.h"
#include "offlang/models.h"
#include "offlang/random.h"
#include "support.h"

namespace offlang {
namespace {

std::vector<int> repeat(int v, std::size_t n) { return std::vector<int>(n, v); }

std::vector<int> concat(std::initializer_list<std::vector<int>> parts) {
  std::vector<int> out;
  for (const auto &p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

TEST(MetricsTest, DanishAllMajorityPerClass) {
  const auto gold = concat({repeat(0, 632), repeat(1, 89)});
  const auto m = metrics(gold, repeat(0, gold.size()), task_classes(Task::kA));
  EXPECT_NEAR(m.precision[0], 632.0 / 721.0, 1e-12);
  EXPECT_EQ(m.recall[0], 1.0);
  EXPECT_NEAR(m.f1[0], 0.9342, 5e-5);
  EXPECT_EQ(m.precision[1], 0.0);
  EXPECT_EQ(m.f1[1], 0.0);
  EXPECT_NEAR(m.macro_f1, 0.4671, 5e-5);
  EXPECT_EQ(m.support, (std::vector<std::size_t>{632, 89}));
  EXPECT_NEAR(m.accuracy, 632.0 / 721.0, 1e-12);
}

TEST(MetricsTest, DanishSubtasksViaBaselines) {
  const Dataset train = testing::danish_train_distribution();
  const Dataset test = testing::danish_test_distribution();
  EXPECT_NEAR(evaluate(majority_baseline(train, Task::kB), test).macro_f1, 0.3456, 5e-5);
  EXPECT_NEAR(evaluate(majority_baseline(train, Task::kC), test).macro_f1, 0.2190, 5e-5);
  EXPECT_EQ(evaluate(majority_baseline(train, Task::kB), test).confusion.total(), 89u);
}

TEST(MetricsTest, EnglishBaselineValues) {
  const auto a = concat({repeat(0, 620), repeat(1, 240)});
  EXPECT_NEAR(metrics(a, repeat(0, a.size()), task_classes(Task::kA)).macro_f1, 0.4189, 5e-5);
  const auto b = concat({repeat(0, 213), repeat(1, 27)});
  EXPECT_NEAR(metrics(b, repeat(0, b.size()), task_classes(Task::kB)).macro_f1, 0.4702, 5e-5);
}

TEST(MetricsTest, PerfectAndErrors) {
  const std::vector<int> gold = {0, 1, 2, 1, 0};
  const auto m = metrics(gold, gold, task_classes(Task::kC));
  EXPECT_EQ(m.macro_f1, 1.0);
  EXPECT_EQ(m.accuracy, 1.0);
  EXPECT_EQ(m.confusion.trace(), 5u);
  EXPECT_THROW(metrics(gold, std::vector<int>{0, 1}, task_classes(Task::kC)), ArgumentError);
  EXPECT_THROW(metrics(std::vector<int>{}, std::vector<int>{}, task_classes(Task::kA)),
               ArgumentError);
  EXPECT_THROW(metrics(std::vector<int>{0}, std::vector<int>{5}, task_classes(Task::kA)),
               ArgumentError);
  EXPECT_THROW(metrics(std::vector<std::string>{"NOT"}, std::vector<std::string>{"MAYBE"},
                       task_classes(Task::kA)),
               ArgumentError);
}

// Property: metrics ignore sample order, and constant predictions follow
// the closed form F1 = 2 n_c / (N + n_c) for the predicted class.
TEST(MetricsProperty, PermutationInvarianceAndClosedForm) {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 2 + rng.index(2);
    const std::vector<std::string> names =
        k == 2 ? task_classes(Task::kA) : task_classes(Task::kC);
    const std::size_t n = 1 + rng.index(60);
    std::vector<int> gold(n), pred(n);
    for (std::size_t i = 0; i < n; ++i) {
      gold[i] = static_cast<int>(rng.index(k));
      pred[i] = static_cast<int>(rng.index(k));
    }
    const auto base = metrics(gold, pred, names);
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    rng.shuffle(std::span<std::size_t>(perm));
    std::vector<int> g2(n), p2(n);
    for (std::size_t i = 0; i < n; ++i) {
      g2[i] = gold[perm[i]];
      p2[i] = pred[perm[i]];
    }
    const auto shuffled = metrics(g2, p2, names);
    EXPECT_EQ(shuffled.f1, base.f1);
    EXPECT_EQ(shuffled.macro_f1, base.macro_f1);
    EXPECT_GE(base.macro_f1, 0.0);
    EXPECT_LE(base.macro_f1, 1.0);

    const int c = static_cast<int>(rng.index(k));
    const auto constant = metrics(gold, repeat(c, n), names);
    const double nc = static_cast<double>(std::count(gold.begin(), gold.end(), c));
    const double expected = 2.0 * nc / (static_cast<double>(n) + nc);
    EXPECT_NEAR(constant.f1[static_cast<std::size_t>(c)], expected, 1e-12);
    EXPECT_NEAR(constant.macro_f1, expected / static_cast<double>(k), 1e-12);
  }
}

// Maps posts to classes by id.
class TablePredictor : public Predictor {
 public:
  TablePredictor(Task task, std::map<std::string, int> table)
      : task_(task), table_(std::move(table)) {}
  Task task() const override { return task_; }
  std::vector<int> predict(std::span<const Post> posts) const override {
    std::vector<int> out;
    for (const auto &p : posts) {
      seen.push_back(p.id);
      out.push_back(table_.at(p.id));
    }
    return out;
  }
  mutable std::vector<std::string> seen;

 private:
  Task task_;
  std::map<std::string, int> table_;
};

TEST(PipelineTest, CascadeRoutesPostsByEarlierDecisions) {
  const std::vector<Post> posts = {{"p0", "x", Source::kOther},
                                   {"p1", "y", Source::kOther},
                                   {"p2", "z", Source::kOther}};
  const TablePredictor a(Task::kA, {{"p0", 0}, {"p1", 1}, {"p2", 1}});
  const TablePredictor b(Task::kB, {{"p1", 1}, {"p2", 0}});
  const TablePredictor c(Task::kC, {{"p2", 2}});
  const auto out = run_pipeline(a, b, c, posts);
  EXPECT_EQ(out[0].pattern(), "NOT");
  EXPECT_EQ(out[1].pattern(), "OFF-UNT");
  EXPECT_EQ(out[2].pattern(), "OFF-TIN-OTH");
  EXPECT_EQ(b.seen, (std::vector<std::string>{"p1", "p2"}));
  EXPECT_EQ(c.seen, (std::vector<std::string>{"p2"}));
  EXPECT_THROW(run_pipeline(b, a, c, posts), ArgumentError);

  std::vector<LabeledPost> items = {{posts[0], *parse_pattern("NOT")},
                                    {posts[1], *parse_pattern("OFF-UNT")},
                                    {posts[2], *parse_pattern("OFF-TIN-GRP")}};
  const auto m = evaluate_pipeline(a, b, c, Dataset("t", items));
  EXPECT_EQ(m.classes, label_patterns());
  EXPECT_NEAR(m.accuracy, 2.0 / 3.0, 1e-12);
}

// Property: random cascades always yield one of the five label patterns.
TEST(PipelineProperty, OutputsAreValidPatterns) {
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Post> posts;
    std::map<std::string, int> ta, tb, tc;
    for (std::size_t i = 0, n = 1 + rng.index(30); i < n; ++i) {
      const std::string id = "q" + std::to_string(i);
      posts.push_back({id, "t", Source::kOther});
      ta[id] = static_cast<int>(rng.index(2));
      tb[id] = static_cast<int>(rng.index(2));
      tc[id] = static_cast<int>(rng.index(3));
    }
    const auto out = run_pipeline(TablePredictor(Task::kA, ta), TablePredictor(Task::kB, tb),
                                  TablePredictor(Task::kC, tc), posts);
    ASSERT_EQ(out.size(), posts.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      const auto &pats = label_patterns();
      EXPECT_NE(std::find(pats.begin(), pats.end(), out[i].pattern()), pats.end());
      EXPECT_EQ(out[i].a == LabelA::kOff, ta[posts[i].id] == 1);
    }
  }
}

TEST(ReportTest, FormatsAndJson) {
  const std::vector<int> gold = {0, 0, 1, 1};
  const std::vector<int> pred = {0, 1, 1, 1};
  const auto m = metrics(gold, pred, task_classes(Task::kA));
  const std::string report = format_report(m, "Task A");
  EXPECT_NE(report.find("Task A"), std::string::npos);
  EXPECT_NE(report.find("NOT"), std::string::npos);
  EXPECT_NE(report.find("macro"), std::string::npos);
  const std::string kv = format_key_values(m);
  EXPECT_NE(kv.find("macro_f1="), std::string::npos);
  const auto j = metrics_to_json(m);
  EXPECT_DOUBLE_EQ(j["macro_f1"].get<double>(), m.macro_f1);
  EXPECT_EQ(j["classes"].size(), 2u);
}

TEST(EvaluateTest, NoApplicablePostsErrors) {
  const Dataset nots = testing::from_counts({{HierLabel::not_offensive(), 4}}, "n");
  const Dataset train = testing::danish_train_distribution();
  EXPECT_THROW(evaluate(majority_baseline(train, Task::kB), nots), InsufficientDataError);
}

}  // namespace
}  // namespace offlang
