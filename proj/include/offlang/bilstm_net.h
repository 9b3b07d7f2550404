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

#ifndef OFFLANG_BILSTM_NET_H_
#define OFFLANG_BILSTM_NET_H_

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "offlang/errors.h"
#include "offlang/nn/dense.h"
#include "offlang/nn/dropout.h"
#include "offlang/nn/loss.h"
#include "offlang/nn/lstm.h"
#include "offlang/nn/tensor.h"
#include "offlang/random.h"

namespace offlang {

struct NetShape {
  std::size_t vocab_rows = 2;
  std::size_t embedding_dim = 1;
  std::size_t lstm_hidden = 20;
  std::size_t aux_dim = 0;
  std::size_t hidden = 16;
  std::size_t outputs = 1;  // 1 = sigmoid head, >1 = softmax head
  double dropout = 0.2;
  bool train_embedding = true;
};

// embed -> BiLSTM -> [concat aux] -> dense ReLU -> sigmoid/softmax.
// Dropout follows the embedding lookup, the BiLSTM(+aux) output and the
// hidden layer.
template <typename T>
class BiLstmNet {
 public:
  BiLstmNet() = default;

  // `embedding` is rows x dim, row 0 is padding.
  BiLstmNet(const NetShape &shape, std::span<const double> embedding, Rng &rng)
      : shape_(shape) {
    if (embedding.size() != shape.vocab_rows * shape.embedding_dim) {
      throw ShapeError("BiLstmNet: embedding size does not match shape");
    }
    nn::check_dropout_rate(shape.dropout);
    emb_ = nn::Tensor<T>({shape.vocab_rows, shape.embedding_dim});
    for (std::size_t i = 0; i < embedding.size(); ++i) {
      emb_[i] = static_cast<T>(embedding[i]);
    }
    fwd_ = nn::LstmParams<T>::init(shape.lstm_hidden, shape.embedding_dim, rng);
    bwd_ = nn::LstmParams<T>::init(shape.lstm_hidden, shape.embedding_dim, rng);
    w1_ = glorot(shape.hidden, concat_dim(), rng);
    b1_ = nn::Tensor<T>({shape.hidden});
    w2_ = glorot(shape.outputs, shape.hidden, rng);
    b2_ = nn::Tensor<T>({shape.outputs});
    alloc_grads();
  }

  const NetShape &shape() const { return shape_; }
  const nn::Tensor<T> &embedding() const { return emb_; }
  std::size_t concat_dim() const { return 2 * shape_.lstm_hidden + shape_.aux_dim; }

  std::vector<nn::ParamRef<T>> params() {
    std::vector<nn::ParamRef<T>> out;
    if (shape_.train_embedding) out.push_back({"embedding", emb_.span(), g_emb_.span()});
    for (auto &r : fwd_.refs("lstm_fwd", g_fwd_)) out.push_back(r);
    for (auto &r : bwd_.refs("lstm_bwd", g_bwd_)) out.push_back(r);
    out.push_back({"hidden.W", w1_.span(), g_w1_.span()});
    out.push_back({"hidden.b", b1_.span(), g_b1_.span()});
    out.push_back({"output.W", w2_.span(), g_w2_.span()});
    out.push_back({"output.b", b2_.span(), g_b2_.span()});
    return out;
  }

  void zero_grad() {
    for (auto &p : params()) std::fill(p.grad.begin(), p.grad.end(), T(0));
  }

  // Output probabilities without dropout.
  std::vector<T> predict(std::span<const std::size_t> indices,
                         std::size_t true_len, std::span<const T> aux) const {
    Cache cache;
    forward(indices, true_len, aux, nullptr, cache);
    return cache.out;
  }

  // Forward + backward for one sample. Adds scale * dLoss/dparam to the
  // gradients and returns the unscaled weighted loss. A null rng disables
  // dropout.
  T accumulate(std::span<const std::size_t> indices, std::size_t true_len,
               std::span<const T> aux, int label, const nn::ClassWeights &w,
               T scale, Rng *rng) {
    Cache c;
    forward(indices, true_len, aux, rng, c);
    const std::size_t n_out = shape_.outputs;
    std::vector<T> dout(n_out), dz2(n_out);
    T loss;
    if (n_out == 1) {
      loss = nn::weighted_bce<T>(c.out[0], label, w);
      dout[0] = scale * nn::weighted_bce_grad<T>(c.out[0], label, w);
      nn::activation_backward<T>(c.out, dout, nn::Activation::kSigmoid, dz2);
    } else {
      loss = nn::weighted_cce<T>(c.out, label, w);
      nn::weighted_cce_grad<T>(c.out, label, w, dout);
      for (auto &v : dout) v *= scale;
      nn::activation_backward<T>(c.out, dout, nn::Activation::kSoftmax, dz2);
    }

    std::vector<T> da1d(shape_.hidden), dz1(shape_.hidden);
    nn::dense_backward<T>(c.a1d, w2_, dz2, g_w2_.span(), g_b2_.span(), da1d);
    for (std::size_t k = 0; k < shape_.hidden; ++k) da1d[k] *= c.m2[k];
    nn::activation_backward<T>(c.a1, da1d, nn::Activation::kRelu, dz1);

    std::vector<T> dud(concat_dim());
    nn::dense_backward<T>(c.ud, w1_, dz1, g_w1_.span(), g_b1_.span(), dud);
    const std::size_t two_h = 2 * shape_.lstm_hidden;
    std::vector<T> dr(two_h);
    for (std::size_t k = 0; k < two_h; ++k) dr[k] = dud[k] * c.m1[k];

    const std::size_t d = shape_.embedding_dim;
    std::vector<T> dxs;
    if (shape_.train_embedding) dxs.assign(true_len * d, T(0));
    nn::bilstm_backward<T>(fwd_, bwd_, c.lstm, dr, g_fwd_, g_bwd_, dxs);
    if (shape_.train_embedding) {
      for (std::size_t t = 0; t < true_len; ++t) {
        const std::size_t row = indices[t];
        if (row == 0) continue;
        T *g = g_emb_.values.data() + row * d;
        for (std::size_t k = 0; k < d; ++k) g[k] += dxs[t * d + k] * c.m0[t * d + k];
      }
    }
    return loss;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["shape"] = {{"vocab_rows", shape_.vocab_rows},
                  {"embedding_dim", shape_.embedding_dim},
                  {"lstm_hidden", shape_.lstm_hidden},
                  {"aux_dim", shape_.aux_dim},
                  {"hidden", shape_.hidden},
                  {"outputs", shape_.outputs},
                  {"dropout", shape_.dropout},
                  {"train_embedding", shape_.train_embedding}};
    j["lstm_fwd"] = {{"W", fwd_.W.values}, {"U", fwd_.U.values}, {"b", fwd_.b.values}};
    j["lstm_bwd"] = {{"W", bwd_.W.values}, {"U", bwd_.U.values}, {"b", bwd_.b.values}};
    j["hidden"] = {{"W", w1_.values}, {"b", b1_.values}};
    j["output"] = {{"W", w2_.values}, {"b", b2_.values}};
    return j;
  }

  // The embedding is not serialized here; callers restore it separately.
  static BiLstmNet from_json(const nlohmann::json &j,
                             std::span<const double> embedding) {
    const auto &s = j.at("shape");
    NetShape shape;
    shape.vocab_rows = s.at("vocab_rows").get<std::size_t>();
    shape.embedding_dim = s.at("embedding_dim").get<std::size_t>();
    shape.lstm_hidden = s.at("lstm_hidden").get<std::size_t>();
    shape.aux_dim = s.at("aux_dim").get<std::size_t>();
    shape.hidden = s.at("hidden").get<std::size_t>();
    shape.outputs = s.at("outputs").get<std::size_t>();
    shape.dropout = s.at("dropout").get<double>();
    shape.train_embedding = s.at("train_embedding").get<bool>();
    Rng rng(0);
    BiLstmNet net(shape, embedding, rng);
    const auto load = [](const nlohmann::json &arr, nn::Tensor<T> &t) {
      auto v = arr.get<std::vector<T>>();
      if (v.size() != t.size()) throw ShapeError("checkpoint: parameter size mismatch");
      t.values = std::move(v);
    };
    load(j.at("lstm_fwd").at("W"), net.fwd_.W);
    load(j.at("lstm_fwd").at("U"), net.fwd_.U);
    load(j.at("lstm_fwd").at("b"), net.fwd_.b);
    load(j.at("lstm_bwd").at("W"), net.bwd_.W);
    load(j.at("lstm_bwd").at("U"), net.bwd_.U);
    load(j.at("lstm_bwd").at("b"), net.bwd_.b);
    load(j.at("hidden").at("W"), net.w1_);
    load(j.at("hidden").at("b"), net.b1_);
    load(j.at("output").at("W"), net.w2_);
    load(j.at("output").at("b"), net.b2_);
    return net;
  }

 private:
  struct Cache {
    std::vector<T> x;   // true_len x d after dropout
    std::vector<T> m0;  // embedding dropout mask
    nn::BiLstmCache<T> lstm;
    std::vector<T> ud;  // concat after dropout
    std::vector<T> m1;
    std::vector<T> a1;  // hidden activation before dropout
    std::vector<T> a1d;
    std::vector<T> m2;
    std::vector<T> out;
  };

  static nn::Tensor<T> glorot(std::size_t rows, std::size_t cols, Rng &rng) {
    nn::Tensor<T> w({rows, cols});
    const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
    for (auto &v : w.values) v = static_cast<T>(rng.uniform(-limit, limit));
    return w;
  }

  void alloc_grads() {
    g_emb_ = nn::Tensor<T>(emb_.shape);
    g_fwd_ = nn::LstmParams<T>::zeros(fwd_.hidden(), fwd_.input());
    g_bwd_ = nn::LstmParams<T>::zeros(bwd_.hidden(), bwd_.input());
    g_w1_ = nn::Tensor<T>(w1_.shape);
    g_b1_ = nn::Tensor<T>(b1_.shape);
    g_w2_ = nn::Tensor<T>(w2_.shape);
    g_b2_ = nn::Tensor<T>(b2_.shape);
  }

  void mask(std::size_t n, Rng *rng, std::vector<T> &m) const {
    if (rng == nullptr || shape_.dropout == 0.0) {
      m.assign(n, T(1));
    } else {
      nn::dropout_mask<T>(n, shape_.dropout, *rng, m);
    }
  }

  void forward(std::span<const std::size_t> indices, std::size_t true_len,
               std::span<const T> aux, Rng *rng, Cache &c) const {
    if (aux.size() != shape_.aux_dim) {
      throw ShapeError("BiLstmNet: aux vector has " + std::to_string(aux.size()) +
                       " values, expected " + std::to_string(shape_.aux_dim));
    }
    if (true_len > indices.size()) {
      throw ArgumentError("BiLstmNet: true_len exceeds sequence length");
    }
    const std::size_t d = shape_.embedding_dim;
    c.x.resize(true_len * d);
    mask(true_len * d, rng, c.m0);
    for (std::size_t t = 0; t < true_len; ++t) {
      const std::size_t row = indices[t];
      if (row >= shape_.vocab_rows) throw ArgumentError("BiLstmNet: index out of range");
      const T *e = emb_.values.data() + row * d;
      for (std::size_t k = 0; k < d; ++k) c.x[t * d + k] = e[k] * c.m0[t * d + k];
    }
    const std::size_t two_h = 2 * shape_.lstm_hidden;
    std::vector<T> r(two_h);
    nn::bilstm_forward<T>(fwd_, bwd_, c.x, true_len, c.lstm, r);

    c.ud.resize(concat_dim());
    std::copy(r.begin(), r.end(), c.ud.begin());
    std::copy(aux.begin(), aux.end(), c.ud.begin() + static_cast<std::ptrdiff_t>(two_h));
    mask(concat_dim(), rng, c.m1);
    for (std::size_t k = 0; k < c.ud.size(); ++k) c.ud[k] *= c.m1[k];

    c.a1.resize(shape_.hidden);
    nn::affine<T>(c.ud, w1_, b1_, c.a1);
    nn::activate<T>(c.a1, nn::Activation::kRelu);
    mask(shape_.hidden, rng, c.m2);
    c.a1d.resize(shape_.hidden);
    for (std::size_t k = 0; k < shape_.hidden; ++k) c.a1d[k] = c.a1[k] * c.m2[k];

    c.out.resize(shape_.outputs);
    nn::affine<T>(c.a1d, w2_, b2_, c.out);
    nn::activate<T>(c.out, shape_.outputs == 1 ? nn::Activation::kSigmoid
                                               : nn::Activation::kSoftmax);
  }

  NetShape shape_;
  nn::Tensor<T> emb_;
  nn::LstmParams<T> fwd_, bwd_;
  nn::Tensor<T> w1_, b1_, w2_, b2_;

  nn::Tensor<T> g_emb_;
  nn::LstmParams<T> g_fwd_, g_bwd_;
  nn::Tensor<T> g_w1_, g_b1_, g_w2_, g_b2_;
};

}  // namespace offlang

#endif  // OFFLANG_BILSTM_NET_H_
