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

#ifndef OFFLANG_MODELS_H_
#define OFFLANG_MODELS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "offlang/corpus.h"
#include "offlang/embeddings.h"
#include "offlang/features.h"
#include "offlang/labels.h"
#include "offlang/nn/loss.h"
#include "offlang/predictor.h"

namespace offlang {

enum class ModelKind {
  kMajority,
  kLogReg,
  kLearnedBiLstm,
  kFastBiLstm,
  kAuxFastBiLstm
};

std::string_view to_string(ModelKind k);
std::optional<ModelKind> parse_model_kind(std::string_view s);
bool is_bilstm(ModelKind k);

enum class ClassWeighting { kInverseCount, kNone };

struct TrainConfig {
  std::size_t batch_size = 128;
  double lr = 0.001;
  double dropout = 0.2;
  std::size_t epochs = 10;
  std::uint64_t seed = 0;
  ClassWeighting class_weights = ClassWeighting::kInverseCount;
  std::string optimizer = "adam";

  // Logistic regression solver.
  double l2 = 0.01;
  std::size_t max_iter = 2000;
  double tolerance = 1e-6;

  // Sequence models.
  std::size_t max_len = 100;
  std::size_t embedding_dim = 50;  // learned embeddings only
  std::size_t min_count = 1;       // learned vocabulary cutoff

  void validate() const;
  nlohmann::json to_json() const;
  static TrainConfig from_json(const nlohmann::json &j);

  friend bool operator==(const TrainConfig &, const TrainConfig &) = default;
};

// Optional inputs shared by the trainers.
struct ModelResources {
  const EmbeddingMatrix *embeddings = nullptr;  // pretrained (fast variants)
  std::string embeddings_path;                  // recorded in checkpoints
  std::optional<SentimentLexicon> sentiment;
  const PosTagMap *pos_tags = nullptr;
  AuxFeatureConfig features;
};

// w_c = N / (K n_c) over the task-restricted distribution.
nn::ClassWeights class_weights_from(const LabelDistribution &dist, Task task);

class TrainedModel : public Predictor {
 public:
  struct State;

  TrainedModel() = default;
  TrainedModel(ModelKind kind, Task task, TrainConfig config,
               std::shared_ptr<const State> state);

  ModelKind kind() const { return kind_; }
  Task task() const override { return task_; }
  const TrainConfig &config() const { return config_; }

  std::vector<int> predict(std::span<const Post> posts) const override;
  // Per-post class probabilities (one entry per task class).
  std::vector<std::vector<double>> predict_proba(std::span<const Post> posts) const;

  // Mean training loss per epoch (empty for the baseline).
  const std::vector<double> &epoch_losses() const;
  // Embedding matrix after training; null for non-sequence models.
  const EmbeddingMatrix *embeddings() const;
  // Class predicted by the majority baseline.
  std::optional<int> majority_class() const;

  // POS tags used at prediction time for models trained with them.
  void set_pos_tags(const PosTagMap *tags) { pos_tags_ = tags; }

  nlohmann::json to_json() const;
  // Frozen embeddings are referenced by path + checksum. `frozen` overrides
  // the recorded path when given.
  static TrainedModel from_json(const nlohmann::json &j,
                                const EmbeddingMatrix *frozen = nullptr);
  void save(const std::filesystem::path &path) const;
  static TrainedModel load(const std::filesystem::path &path,
                           const EmbeddingMatrix *frozen = nullptr);

 private:
  ModelKind kind_ = ModelKind::kMajority;
  Task task_ = Task::kA;
  TrainConfig config_;
  std::shared_ptr<const State> state_;
  const PosTagMap *pos_tags_ = nullptr;
};

// Always predicts the most frequent task class; ties go to the earlier class.
TrainedModel majority_baseline(const Dataset &train, Task task);

// One-vs-rest logistic regression on the auxiliary feature vector, fitted by
// full-batch gradient descent with backtracking and an L2 penalty.
TrainedModel train_logreg(const Dataset &train, Task task,
                          const ModelResources &resources,
                          const TrainConfig &config);

// Sequence classifiers. learned_bilstm needs a trainable matrix, the fast
// variants a frozen one.
TrainedModel train_bilstm(ModelKind kind, const Dataset &train, Task task,
                          const EmbeddingMatrix &embeddings,
                          const ModelResources &resources,
                          const TrainConfig &config);

// Dispatches on kind. learned_bilstm builds a random embedding from the
// training vocabulary.
TrainedModel train_model(ModelKind kind, const Dataset &train, Task task,
                         const ModelResources &resources,
                         const TrainConfig &config);

using ParamGrid = std::vector<std::pair<std::string, std::vector<std::string>>>;

ParamGrid default_grid();
ParamGrid parse_grid(std::string_view spec);  // "lr=0.01,0.001;batch_size=32"
TrainConfig apply_assignment(
    TrainConfig base,
    const std::vector<std::pair<std::string, std::string>> &assignment);

struct GridCell {
  std::vector<std::pair<std::string, std::string>> assignment;
  TrainConfig config;
  std::vector<double> fold_scores;
  double mean_macro_f1 = 0.0;
};

struct GridSearchResult {
  std::vector<GridCell> cells;
  std::size_t best = 0;

  const GridCell &best_cell() const { return cells.at(best); }
};

// Stratified fold assignment: fold index per sample.
std::vector<std::size_t> stratified_folds(std::span<const int> labels,
                                          std::size_t k, std::uint64_t seed);

// k-fold mean macro-F1 for every grid cell (cartesian product in grid
// order); the first best cell wins ties.
GridSearchResult grid_search_cv(ModelKind kind, const Dataset &train, Task task,
                                const ParamGrid &grid, std::size_t k_folds,
                                std::uint64_t seed,
                                const ModelResources &resources,
                                const TrainConfig &base, std::size_t jobs = 1);

}  // namespace offlang

#endif  // OFFLANG_MODELS_H_
