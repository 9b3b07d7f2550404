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

#include "offlang/models.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <future>
#include <map>
#include <numeric>

#include "offlang/bilstm_net.h"
#include "offlang/errors.h"
#include "offlang/eval.h"
#include "offlang/nn/adam.h"
#include "offlang/random.h"
#include "offlang/text.h"

namespace offlang {

namespace {

// z-scores the dense auxiliary channels (sentiment, counts, reading); the
// TF-IDF blocks stay raw so rows remain sparse.
struct AuxScaler {
  std::size_t offset = 0;
  std::vector<double> mean;
  std::vector<double> scale;

  static AuxScaler fit(const std::vector<FeatureVector> &rows) {
    AuxScaler s;
    const auto &layout = rows.front().layout;
    s.offset = layout[2].offset;
    const std::size_t width = rows.front().values.size() - s.offset;
    s.mean.assign(width, 0.0);
    s.scale.assign(width, 0.0);
    for (const auto &r : rows) {
      for (std::size_t k = 0; k < width; ++k) s.mean[k] += r.values[s.offset + k];
    }
    for (auto &m : s.mean) m /= static_cast<double>(rows.size());
    for (const auto &r : rows) {
      for (std::size_t k = 0; k < width; ++k) {
        const double d = r.values[s.offset + k] - s.mean[k];
        s.scale[k] += d * d;
      }
    }
    for (auto &v : s.scale) {
      v = std::sqrt(v / static_cast<double>(rows.size()));
      if (v < 1e-12) v = 1.0;
    }
    return s;
  }

  SparseVector apply(const FeatureVector &fv) const {
    SparseVector out;
    for (std::size_t i = 0; i < offset; ++i) {
      if (fv.values[i] != 0.0) out.push_back({i, fv.values[i]});
    }
    for (std::size_t k = 0; k < mean.size(); ++k) {
      out.push_back({offset + k, (fv.values[offset + k] - mean[k]) / scale[k]});
    }
    return out;
  }

  nlohmann::json to_json() const {
    return {{"offset", offset}, {"mean", mean}, {"scale", scale}};
  }

  static AuxScaler from_json(const nlohmann::json &j) {
    AuxScaler s;
    s.offset = j.at("offset").get<std::size_t>();
    s.mean = j.at("mean").get<std::vector<double>>();
    s.scale = j.at("scale").get<std::vector<double>>();
    return s;
  }
};

struct BinaryLogReg {
  std::vector<double> w;
  double b = 0.0;

  double logit(const SparseVector &x) const {
    double z = b;
    for (const auto &e : x) z += w[e.index] * e.value;
    return z;
  }
};

// log(1 + exp(z)) without overflow.
double softplus(double z) {
  return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double sigmoid(double z) { return nn::sigmoid(z); }

// Minimizes sum_i s_i * logloss_i / sum_i s_i + l2/2 |w|^2 by gradient descent
// with Armijo backtracking.
BinaryLogReg fit_binary(const std::vector<SparseVector> &X,
                        const std::vector<int> &y,
                        const std::vector<double> &sample_weight,
                        std::size_t dim, const TrainConfig &cfg) {
  const std::size_t n = X.size();
  const double total_weight =
      std::accumulate(sample_weight.begin(), sample_weight.end(), 0.0);
  BinaryLogReg m;
  m.w.assign(dim, 0.0);

  std::vector<double> z(n, 0.0);
  const auto objective = [&](const std::vector<double> &zs, double w_sq) {
    double f = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      f += sample_weight[i] * softplus(y[i] == 1 ? -zs[i] : zs[i]);
    }
    return f / total_weight + 0.5 * cfg.l2 * w_sq;
  };
  double w_sq = 0.0;
  double f = objective(z, w_sq);
  std::vector<double> gw(dim), gz(n), z_trial(n);
  double step = 1.0;
  for (std::size_t iter = 0; iter < cfg.max_iter; ++iter) {
    std::fill(gw.begin(), gw.end(), 0.0);
    double gb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = sample_weight[i] * (sigmoid(z[i]) - y[i]) / total_weight;
      gb += r;
      for (const auto &e : X[i]) gw[e.index] += r * e.value;
    }
    double g_sq = gb * gb;
    for (std::size_t k = 0; k < dim; ++k) {
      gw[k] += cfg.l2 * m.w[k];
      g_sq += gw[k] * gw[k];
    }
    if (std::sqrt(g_sq) < cfg.tolerance) break;

    for (std::size_t i = 0; i < n; ++i) {
      double v = gb;
      for (const auto &e : X[i]) v += gw[e.index] * e.value;
      gz[i] = v;
    }
    step = std::min(step * 2.0, 1e6);
    double f_trial = f;
    double w_sq_trial = w_sq;
    for (;;) {
      for (std::size_t i = 0; i < n; ++i) z_trial[i] = z[i] - step * gz[i];
      w_sq_trial = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        const double v = m.w[k] - step * gw[k];
        w_sq_trial += v * v;
      }
      f_trial = objective(z_trial, w_sq_trial);
      if (f_trial <= f - 0.5 * step * g_sq || step < 1e-12) break;
      step *= 0.5;
    }
    if (!(f_trial < f)) break;
    for (std::size_t k = 0; k < dim; ++k) m.w[k] -= step * gw[k];
    m.b -= step * gb;
    z.swap(z_trial);
    w_sq = w_sq_trial;
    f = f_trial;
  }
  return m;
}

const TokenList *find_tags(const PosTagMap *tags, const std::string &id) {
  if (tags == nullptr) return nullptr;
  const auto it = tags->find(id);
  return it == tags->end() ? nullptr : &it->second;
}

AuxFeatureExtractor fit_extractor(const Dataset &data,
                                  const ModelResources &res) {
  std::vector<std::string> texts;
  std::vector<TokenList> tags;
  for (const auto &item : data.items()) {
    texts.push_back(item.post.text);
    if (res.pos_tags != nullptr) {
      const TokenList *t = find_tags(res.pos_tags, item.post.id);
      tags.push_back(t ? *t : TokenList{});
    }
  }
  return AuxFeatureExtractor::fit(texts, tags, res.sentiment, res.features);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::string_view weighting_name(ClassWeighting w) {
  return w == ClassWeighting::kInverseCount ? "inverse_count" : "none";
}

nn::ClassWeights weights_for(const Dataset &restricted, Task task,
                             const TrainConfig &cfg) {
  if (cfg.class_weights == ClassWeighting::kNone) {
    return nn::ClassWeights::uniform(task_classes(task).size());
  }
  return class_weights_from(distribution(restricted), task);
}

std::vector<double> densify(const SparseVector &v, std::size_t dim) {
  std::vector<double> out(dim, 0.0);
  for (const auto &e : v) out[e.index] = e.value;
  return out;
}

}  // namespace

struct TrainedModel::State {
  int majority = 0;

  std::optional<AuxFeatureExtractor> extractor;
  AuxScaler scaler;
  std::vector<BinaryLogReg> logreg;  // one per class (or one for binary)

  std::optional<EmbeddingMatrix> embeddings;
  std::string embeddings_path;
  std::optional<BiLstmNet<float>> net;

  std::vector<double> epoch_losses;
};

std::string_view to_string(ModelKind k) {
  switch (k) {
    case ModelKind::kMajority: return "majority";
    case ModelKind::kLogReg: return "logreg";
    case ModelKind::kLearnedBiLstm: return "learned_bilstm";
    case ModelKind::kFastBiLstm: return "fast_bilstm";
    case ModelKind::kAuxFastBiLstm: return "aux_fast_bilstm";
  }
  return "?";
}

std::optional<ModelKind> parse_model_kind(std::string_view s) {
  for (auto k : {ModelKind::kMajority, ModelKind::kLogReg,
                 ModelKind::kLearnedBiLstm, ModelKind::kFastBiLstm,
                 ModelKind::kAuxFastBiLstm}) {
    if (s == to_string(k)) return k;
  }
  if (s == "majority_baseline") return ModelKind::kMajority;
  return std::nullopt;
}

bool is_bilstm(ModelKind k) {
  return k == ModelKind::kLearnedBiLstm || k == ModelKind::kFastBiLstm ||
         k == ModelKind::kAuxFastBiLstm;
}

void TrainConfig::validate() const {
  if (batch_size < 1) throw ArgumentError("batch_size must be >= 1");
  if (!(dropout >= 0.0 && dropout < 1.0)) throw ArgumentError("dropout must lie in [0, 1)");
  if (!(lr > 0.0) || !std::isfinite(lr)) throw ArgumentError("lr must be positive");
  if (epochs < 1) throw ArgumentError("epochs must be >= 1");
  if (optimizer != "adam") throw ArgumentError("unsupported optimizer '" + optimizer + "' (only adam)");
  if (l2 < 0.0) throw ArgumentError("l2 must be >= 0");
  if (max_len < 1) throw ArgumentError("max_len must be >= 1");
  if (embedding_dim < 1) throw ArgumentError("embedding_dim must be >= 1");
}

nlohmann::json TrainConfig::to_json() const {
  return {{"batch_size", batch_size},
          {"lr", lr},
          {"dropout", dropout},
          {"epochs", epochs},
          {"seed", seed},
          {"class_weights", weighting_name(class_weights)},
          {"optimizer", optimizer},
          {"l2", l2},
          {"max_iter", max_iter},
          {"tolerance", tolerance},
          {"max_len", max_len},
          {"embedding_dim", embedding_dim},
          {"min_count", min_count}};
}

TrainConfig TrainConfig::from_json(const nlohmann::json &j) {
  TrainConfig c;
  c.batch_size = j.at("batch_size").get<std::size_t>();
  c.lr = j.at("lr").get<double>();
  c.dropout = j.at("dropout").get<double>();
  c.epochs = j.at("epochs").get<std::size_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.class_weights = j.at("class_weights").get<std::string>() == "none"
                        ? ClassWeighting::kNone
                        : ClassWeighting::kInverseCount;
  c.optimizer = j.at("optimizer").get<std::string>();
  c.l2 = j.at("l2").get<double>();
  c.max_iter = j.at("max_iter").get<std::size_t>();
  c.tolerance = j.at("tolerance").get<double>();
  c.max_len = j.at("max_len").get<std::size_t>();
  c.embedding_dim = j.at("embedding_dim").get<std::size_t>();
  c.min_count = j.at("min_count").get<std::size_t>();
  return c;
}

nn::ClassWeights class_weights_from(const LabelDistribution &dist, Task task) {
  const std::size_t k = task_classes(task).size();
  std::vector<std::size_t> counts(k, 0);
  for (const auto &[pattern, n] : dist.counts) {
    const auto label = parse_pattern(pattern);
    if (!label) throw ValidationError("unknown label pattern '" + pattern + "'");
    if (const auto cls = task_class(*label, task)) counts[static_cast<std::size_t>(*cls)] += n;
  }
  const std::size_t total = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
  std::vector<double> w(k);
  for (std::size_t c = 0; c < k; ++c) {
    if (counts[c] == 0) {
      throw InsufficientDataError("class " + task_classes(task)[c] +
                                  " has no samples; cannot weight by inverse count");
    }
    w[c] = static_cast<double>(total) /
           (static_cast<double>(k) * static_cast<double>(counts[c]));
  }
  return nn::ClassWeights(std::move(w));
}

TrainedModel::TrainedModel(ModelKind kind, Task task, TrainConfig config,
                           std::shared_ptr<const State> state)
    : kind_(kind), task_(task), config_(std::move(config)), state_(std::move(state)) {}

const std::vector<double> &TrainedModel::epoch_losses() const {
  return state_->epoch_losses;
}

const EmbeddingMatrix *TrainedModel::embeddings() const {
  return state_->embeddings ? &*state_->embeddings : nullptr;
}

std::optional<int> TrainedModel::majority_class() const {
  if (kind_ != ModelKind::kMajority) return std::nullopt;
  return state_->majority;
}

std::vector<std::vector<double>> TrainedModel::predict_proba(
    std::span<const Post> posts) const {
  const std::size_t k = task_classes(task_).size();
  std::vector<std::vector<double>> out;
  out.reserve(posts.size());
  const State &s = *state_;
  switch (kind_) {
    case ModelKind::kMajority:
      for (std::size_t i = 0; i < posts.size(); ++i) {
        std::vector<double> p(k, 0.0);
        p[static_cast<std::size_t>(s.majority)] = 1.0;
        out.push_back(std::move(p));
      }
      return out;
    case ModelKind::kLogReg:
      for (const auto &post : posts) {
        const auto fv = s.extractor->build(post.text, find_tags(pos_tags_, post.id));
        const SparseVector x = s.scaler.apply(fv);
        if (s.logreg.size() == 1) {
          const double p = sigmoid(s.logreg[0].logit(x));
          out.push_back({1.0 - p, p});
        } else {
          std::vector<double> p(k);
          double sum = 0.0;
          for (std::size_t c = 0; c < k; ++c) {
            p[c] = sigmoid(s.logreg[c].logit(x));
            sum += p[c];
          }
          for (auto &v : p) v /= sum;
          out.push_back(std::move(p));
        }
      }
      return out;
    default:
      break;
  }
  const BiLstmNet<float> &net = *s.net;
  const std::size_t aux_dim = net.shape().aux_dim;
  std::vector<float> aux(aux_dim);
  for (const auto &post : posts) {
    const auto seq = encode(*s.embeddings, tokenize(post.text), config_.max_len);
    if (aux_dim > 0) {
      const auto fv = s.extractor->build(post.text, find_tags(pos_tags_, post.id));
      const auto dense = densify(s.scaler.apply(fv), aux_dim);
      std::copy(dense.begin(), dense.end(), aux.begin());
    }
    const auto p = net.predict(seq.indices, seq.true_len, aux);
    if (p.size() == 1) {
      out.push_back({1.0 - p[0], static_cast<double>(p[0])});
    } else {
      out.emplace_back(p.begin(), p.end());
    }
  }
  return out;
}

std::vector<int> TrainedModel::predict(std::span<const Post> posts) const {
  if (kind_ == ModelKind::kMajority) {
    return std::vector<int>(posts.size(), state_->majority);
  }
  const auto proba = predict_proba(posts);
  std::vector<int> out;
  out.reserve(proba.size());
  for (const auto &p : proba) {
    if (p.size() == 2) {
      out.push_back(p[1] >= 0.5 ? 1 : 0);
    } else {
      out.push_back(static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin()));
    }
  }
  return out;
}

nlohmann::json TrainedModel::to_json() const {
  nlohmann::json j;
  j["format"] = "offlang-model/1";
  j["kind"] = to_string(kind_);
  j["task"] = to_string(task_);
  j["config"] = config_.to_json();
  const State &s = *state_;
  j["majority"] = s.majority;
  j["epoch_losses"] = s.epoch_losses;
  if (s.extractor) {
    j["extractor"] = s.extractor->to_json();
    j["scaler"] = s.scaler.to_json();
  }
  if (!s.logreg.empty()) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &m : s.logreg) arr.push_back({{"w", m.w}, {"b", m.b}});
    j["logreg"] = arr;
  }
  if (s.embeddings) {
    const EmbeddingMatrix &e = *s.embeddings;
    nlohmann::json ej = {{"trainable", e.trainable()},
                         {"dim", e.dim()},
                         {"checksum", std::to_string(e.checksum())},
                         {"path", s.embeddings_path}};
    if (e.trainable()) {
      ej["tokens"] = e.tokens();
      ej["weights"] = e.weights();
    }
    j["embeddings"] = ej;
  }
  if (s.net) j["network"] = s.net->to_json();
  return j;
}

TrainedModel TrainedModel::from_json(const nlohmann::json &j,
                                     const EmbeddingMatrix *frozen) {
  if (j.value("format", "") != "offlang-model/1") {
    throw ValidationError("not an offlang model checkpoint");
  }
  const auto kind = parse_model_kind(j.at("kind").get<std::string>());
  const auto task = parse_task(j.at("task").get<std::string>());
  if (!kind || !task) throw ValidationError("checkpoint: bad kind or task");
  auto state = std::make_shared<State>();
  state->majority = j.at("majority").get<int>();
  state->epoch_losses = j.at("epoch_losses").get<std::vector<double>>();
  if (j.contains("extractor")) {
    state->extractor = AuxFeatureExtractor::from_json(j.at("extractor"));
    state->scaler = AuxScaler::from_json(j.at("scaler"));
  }
  if (j.contains("logreg")) {
    for (const auto &m : j.at("logreg")) {
      state->logreg.push_back({m.at("w").get<std::vector<double>>(), m.at("b").get<double>()});
    }
  }
  if (j.contains("embeddings")) {
    const auto &ej = j.at("embeddings");
    state->embeddings_path = ej.at("path").get<std::string>();
    if (ej.at("trainable").get<bool>()) {
      state->embeddings = EmbeddingMatrix(
          ej.at("tokens").get<std::vector<std::string>>(),
          ej.at("dim").get<std::size_t>(),
          ej.at("weights").get<std::vector<double>>(), true);
    } else if (frozen != nullptr) {
      state->embeddings = *frozen;
    } else {
      if (state->embeddings_path.empty()) {
        throw ConfigError("checkpoint references frozen embeddings but no path "
                          "was recorded; pass the embeddings explicitly");
      }
      state->embeddings = load_pretrained_vec(state->embeddings_path);
    }
    if (std::to_string(state->embeddings->checksum()) !=
        ej.at("checksum").get<std::string>()) {
      throw ValidationError("embedding checksum does not match the checkpoint");
    }
  }
  if (j.contains("network")) {
    state->net = BiLstmNet<float>::from_json(j.at("network"),
                                             state->embeddings->weights());
  }
  return TrainedModel(*kind, *task, TrainConfig::from_json(j.at("config")),
                      std::move(state));
}

void TrainedModel::save(const std::filesystem::path &path) const {
  write_file(path, to_json().dump());
}

TrainedModel TrainedModel::load(const std::filesystem::path &path,
                                const EmbeddingMatrix *frozen) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error &e) {
    throw ParseError(path.string(), 0, e.what());
  }
  return from_json(j, frozen);
}

TrainedModel majority_baseline(const Dataset &train, Task task) {
  const Dataset restricted = train.restrict_to(task);
  if (restricted.empty()) {
    throw InsufficientDataError("no training posts for task " +
                                std::string(to_string(task)));
  }
  std::vector<std::size_t> counts(task_classes(task).size(), 0);
  for (int c : restricted.task_labels(task)) ++counts[static_cast<std::size_t>(c)];
  auto state = std::make_shared<TrainedModel::State>();
  state->majority = static_cast<int>(std::max_element(counts.begin(), counts.end()) -
                                     counts.begin());
  return TrainedModel(ModelKind::kMajority, task, TrainConfig{}, std::move(state));
}

TrainedModel train_logreg(const Dataset &train, Task task,
                          const ModelResources &resources,
                          const TrainConfig &config) {
  config.validate();
  const Dataset restricted = train.restrict_to(task);
  if (restricted.empty()) {
    throw InsufficientDataError("no training posts for task " +
                                std::string(to_string(task)));
  }
  const auto labels = restricted.task_labels(task);
  const std::size_t k = task_classes(task).size();
  std::vector<std::size_t> present(k, 0);
  for (int c : labels) ++present[static_cast<std::size_t>(c)];
  if (std::count_if(present.begin(), present.end(), [](auto n) { return n > 0; }) < 2) {
    throw InsufficientDataError("logistic regression needs at least two classes");
  }

  auto state = std::make_shared<TrainedModel::State>();
  state->extractor = fit_extractor(restricted, resources);
  std::vector<FeatureVector> rows;
  rows.reserve(restricted.size());
  for (const auto &item : restricted.items()) {
    rows.push_back(state->extractor->build(
        item.post.text, find_tags(resources.pos_tags, item.post.id)));
  }
  state->scaler = AuxScaler::fit(rows);
  std::vector<SparseVector> X;
  X.reserve(rows.size());
  for (const auto &r : rows) X.push_back(state->scaler.apply(r));
  const std::size_t dim = state->extractor->size();

  // Inverse-count weights need every class; fall back to uniform weights for
  // absent classes only when weighting is disabled.
  const nn::ClassWeights cw = weights_for(restricted, task, config);
  std::vector<double> sw(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) sw[i] = cw[static_cast<std::size_t>(labels[i])];

  const std::size_t n_models = k == 2 ? 1 : k;
  for (std::size_t m = 0; m < n_models; ++m) {
    const int positive = k == 2 ? 1 : static_cast<int>(m);
    std::vector<int> y(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) y[i] = labels[i] == positive ? 1 : 0;
    state->logreg.push_back(fit_binary(X, y, sw, dim, config));
  }
  return TrainedModel(ModelKind::kLogReg, task, config, std::move(state));
}

TrainedModel train_bilstm(ModelKind kind, const Dataset &train, Task task,
                          const EmbeddingMatrix &embeddings,
                          const ModelResources &resources,
                          const TrainConfig &config) {
  config.validate();
  if (!is_bilstm(kind)) throw ArgumentError("train_bilstm: not a BiLSTM model kind");
  if (kind == ModelKind::kLearnedBiLstm && !embeddings.trainable()) {
    throw ConfigError("learned_bilstm requires a trainable embedding matrix");
  }
  if (kind != ModelKind::kLearnedBiLstm && embeddings.trainable()) {
    throw ConfigError(std::string(to_string(kind)) +
                      " requires frozen pretrained embeddings");
  }
  const Dataset restricted = train.restrict_to(task);
  if (restricted.empty()) {
    throw InsufficientDataError("no training posts for task " +
                                std::string(to_string(task)));
  }
  const auto labels = restricted.task_labels(task);
  const std::size_t k = task_classes(task).size();
  const nn::ClassWeights cw = weights_for(restricted, task, config);

  auto state = std::make_shared<TrainedModel::State>();
  std::vector<EncodedSequence> seqs;
  seqs.reserve(restricted.size());
  for (const auto &item : restricted.items()) {
    seqs.push_back(encode(embeddings, tokenize(item.post.text), config.max_len));
  }

  std::vector<SparseVector> aux_rows;
  std::size_t aux_dim = 0;
  if (kind == ModelKind::kAuxFastBiLstm) {
    state->extractor = fit_extractor(restricted, resources);
    std::vector<FeatureVector> rows;
    for (const auto &item : restricted.items()) {
      rows.push_back(state->extractor->build(
          item.post.text, find_tags(resources.pos_tags, item.post.id)));
    }
    state->scaler = AuxScaler::fit(rows);
    for (const auto &r : rows) aux_rows.push_back(state->scaler.apply(r));
    aux_dim = state->extractor->size();
  }

  NetShape shape;
  shape.vocab_rows = embeddings.rows();
  shape.embedding_dim = embeddings.dim();
  shape.aux_dim = aux_dim;
  shape.outputs = k == 2 ? 1 : k;
  shape.dropout = config.dropout;
  shape.train_embedding = embeddings.trainable();

  Rng init_rng(mix_seed(config.seed, 1));
  Rng order_rng(mix_seed(config.seed, 2));
  Rng drop_rng(mix_seed(config.seed, 3));
  state->net.emplace(shape, embeddings.weights(), init_rng);
  BiLstmNet<float> &net = *state->net;
  const auto params = net.params();
  nn::AdamOptimizer<float> adam(params);

  const std::size_t n = seqs.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<float> aux(aux_dim);
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    order_rng.shuffle(std::span<std::size_t>(order));
    double loss_sum = 0.0;
    for (std::size_t start = 0; start < n; start += config.batch_size) {
      const std::size_t end = std::min(n, start + config.batch_size);
      const float scale = 1.0f / static_cast<float>(end - start);
      net.zero_grad();
      for (std::size_t b = start; b < end; ++b) {
        const std::size_t i = order[b];
        if (aux_dim > 0) {
          std::fill(aux.begin(), aux.end(), 0.0f);
          for (const auto &e : aux_rows[i]) aux[e.index] = static_cast<float>(e.value);
        }
        loss_sum += net.accumulate(seqs[i].indices, seqs[i].true_len, aux,
                                   labels[i], cw, scale, &drop_rng);
      }
      adam.step(params, config.lr);
    }
    state->epoch_losses.push_back(loss_sum / static_cast<double>(n));
  }

  state->embeddings = embeddings;
  state->embeddings_path = resources.embeddings_path;
  if (embeddings.trainable()) {
    const auto &trained = net.embedding().values;
    state->embeddings->set_weights(std::vector<double>(trained.begin(), trained.end()));
  }
  return TrainedModel(kind, task, config, std::move(state));
}

TrainedModel train_model(ModelKind kind, const Dataset &train, Task task,
                         const ModelResources &resources,
                         const TrainConfig &config) {
  switch (kind) {
    case ModelKind::kMajority:
      return majority_baseline(train, task);
    case ModelKind::kLogReg:
      return train_logreg(train, task, resources, config);
    case ModelKind::kLearnedBiLstm: {
      config.validate();
      const Dataset restricted = train.restrict_to(task);
      std::vector<TokenList> docs;
      for (const auto &item : restricted.items()) docs.push_back(tokenize(item.post.text));
      const auto emb = init_random(build_vocab(docs, config.min_count),
                                   config.embedding_dim, mix_seed(config.seed, 0));
      return train_bilstm(kind, train, task, emb, resources, config);
    }
    case ModelKind::kFastBiLstm:
    case ModelKind::kAuxFastBiLstm:
      if (resources.embeddings == nullptr) {
        throw ConfigError(std::string(to_string(kind)) +
                          " requires pretrained embeddings");
      }
      return train_bilstm(kind, train, task, *resources.embeddings, resources, config);
  }
  throw ArgumentError("unknown model kind");
}

ParamGrid default_grid() {
  return {{"dropout", {"0.1", "0.2", "0.3"}},
          {"batch_size", {"32", "64", "128"}},
          {"lr", {"0.01", "0.001", "0.0001"}},
          {"optimizer", {"adam"}}};
}

ParamGrid parse_grid(std::string_view spec) {
  ParamGrid grid;
  std::size_t start = 0;
  while (start <= spec.size()) {
    std::size_t semi = spec.find(';', start);
    if (semi == std::string_view::npos) semi = spec.size();
    const std::string_view part = trim(spec.substr(start, semi - start));
    start = semi + 1;
    if (part.empty()) continue;
    const std::size_t eq = part.find('=');
    if (eq == std::string_view::npos) {
      throw ArgumentError("grid entry '" + std::string(part) + "' lacks '='");
    }
    std::vector<std::string> values;
    std::string_view rest = part.substr(eq + 1);
    std::size_t p = 0;
    while (p <= rest.size()) {
      std::size_t comma = rest.find(',', p);
      if (comma == std::string_view::npos) comma = rest.size();
      const auto v = trim(rest.substr(p, comma - p));
      if (!v.empty()) values.emplace_back(v);
      p = comma + 1;
    }
    if (values.empty()) throw ArgumentError("grid entry '" + std::string(part) + "' has no values");
    grid.emplace_back(std::string(trim(part.substr(0, eq))), std::move(values));
  }
  if (grid.empty()) throw ArgumentError("empty parameter grid");
  return grid;
}

TrainConfig apply_assignment(
    TrainConfig base,
    const std::vector<std::pair<std::string, std::string>> &assignment) {
  const auto as_double = [](const std::string &key, const std::string &v) {
    double out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
      throw ArgumentError("grid: bad value '" + v + "' for " + key);
    }
    return out;
  };
  const auto as_size = [](const std::string &key, const std::string &v) {
    std::size_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
      throw ArgumentError("grid: bad value '" + v + "' for " + key);
    }
    return out;
  };
  for (const auto &[key, value] : assignment) {
    if (key == "dropout") base.dropout = as_double(key, value);
    else if (key == "lr") base.lr = as_double(key, value);
    else if (key == "l2") base.l2 = as_double(key, value);
    else if (key == "batch_size") base.batch_size = as_size(key, value);
    else if (key == "epochs") base.epochs = as_size(key, value);
    else if (key == "max_len") base.max_len = as_size(key, value);
    else if (key == "embedding_dim") base.embedding_dim = as_size(key, value);
    else if (key == "optimizer") base.optimizer = value;
    else throw ArgumentError("grid: unknown hyper-parameter '" + key + "'");
  }
  base.validate();
  return base;
}

std::vector<std::size_t> stratified_folds(std::span<const int> labels,
                                          std::size_t k, std::uint64_t seed) {
  if (k < 2) throw ArgumentError("k_folds must be >= 2");
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);
  Rng rng(seed);
  std::vector<std::size_t> fold(labels.size(), 0);
  std::size_t next = 0;
  for (auto &[cls, idx] : by_class) {
    if (idx.size() < k) {
      throw InsufficientDataError("stratification: class " + std::to_string(cls) +
                                  " has " + std::to_string(idx.size()) +
                                  " samples, fewer than " + std::to_string(k) + " folds");
    }
    rng.shuffle(std::span<std::size_t>(idx));
    for (std::size_t i : idx) fold[i] = next++ % k;
  }
  return fold;
}

GridSearchResult grid_search_cv(ModelKind kind, const Dataset &train, Task task,
                                const ParamGrid &grid, std::size_t k_folds,
                                std::uint64_t seed,
                                const ModelResources &resources,
                                const TrainConfig &base, std::size_t jobs) {
  if (grid.empty()) throw ArgumentError("empty parameter grid");
  const Dataset restricted = train.restrict_to(task);
  const auto labels = restricted.task_labels(task);
  const auto folds = stratified_folds(labels, k_folds, seed);

  // Cartesian product, first parameter varying slowest.
  std::vector<GridCell> cells(1);
  for (const auto &[key, values] : grid) {
    if (values.empty()) throw ArgumentError("grid: no values for " + key);
    std::vector<GridCell> next;
    for (const auto &cell : cells) {
      for (const auto &v : values) {
        GridCell c = cell;
        c.assignment.emplace_back(key, v);
        next.push_back(std::move(c));
      }
    }
    cells = std::move(next);
  }
  for (auto &c : cells) {
    c.config = apply_assignment(base, c.assignment);
    c.config.seed = seed;
  }

  std::vector<Dataset> fold_train(k_folds), fold_test(k_folds);
  for (std::size_t f = 0; f < k_folds; ++f) {
    std::vector<LabeledPost> tr, te;
    for (std::size_t i = 0; i < restricted.size(); ++i) {
      (folds[i] == f ? te : tr).push_back(restricted[i]);
    }
    fold_train[f] = Dataset(restricted.name() + "-fold" + std::to_string(f) + "-train", std::move(tr));
    fold_test[f] = Dataset(restricted.name() + "-fold" + std::to_string(f) + "-test", std::move(te));
  }

  const auto run_cell = [&](GridCell &cell) {
    for (std::size_t f = 0; f < k_folds; ++f) {
      const TrainedModel model = train_model(kind, fold_train[f], task, resources, cell.config);
      cell.fold_scores.push_back(evaluate(model, fold_test[f]).macro_f1);
    }
    cell.mean_macro_f1 =
        std::accumulate(cell.fold_scores.begin(), cell.fold_scores.end(), 0.0) /
        static_cast<double>(k_folds);
  };

  jobs = std::max<std::size_t>(jobs, 1);
  for (std::size_t start = 0; start < cells.size(); start += jobs) {
    const std::size_t end = std::min(cells.size(), start + jobs);
    if (jobs == 1) {
      run_cell(cells[start]);
      continue;
    }
    std::vector<std::future<void>> running;
    for (std::size_t i = start; i < end; ++i) {
      running.push_back(std::async(std::launch::async, run_cell, std::ref(cells[i])));
    }
    for (auto &r : running) r.get();
  }

  GridSearchResult result;
  result.cells = std::move(cells);
  for (std::size_t i = 1; i < result.cells.size(); ++i) {
    if (result.cells[i].mean_macro_f1 > result.cells[result.best].mean_macro_f1) {
      result.best = i;
    }
  }
  return result;
}

}  // namespace offlang
