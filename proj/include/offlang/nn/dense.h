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

#ifndef OFFLANG_NN_DENSE_H_
#define OFFLANG_NN_DENSE_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "offlang/errors.h"
#include "offlang/nn/tensor.h"

namespace offlang::nn {

enum class Activation { kIdentity, kRelu, kSigmoid, kTanh, kSoftmax };

template <typename T>
T sigmoid(T z) {
  if (z >= T(0)) return T(1) / (T(1) + std::exp(-z));
  const T e = std::exp(z);
  return e / (T(1) + e);
}

// In place.
template <typename T>
void activate(std::span<T> z, Activation act) {
  switch (act) {
    case Activation::kIdentity:
      return;
    case Activation::kRelu:
      for (auto &v : z) v = std::max(v, T(0));
      return;
    case Activation::kSigmoid:
      for (auto &v : z) v = sigmoid(v);
      return;
    case Activation::kTanh:
      for (auto &v : z) v = std::tanh(v);
      return;
    case Activation::kSoftmax: {
      if (z.empty()) return;
      const T mx = *std::max_element(z.begin(), z.end());
      T sum = 0;
      for (auto &v : z) {
        v = std::exp(v - mx);
        sum += v;
      }
      for (auto &v : z) v /= sum;
      return;
    }
  }
}

// Gradient w.r.t. the pre-activation given the activated output y and dL/dy.
template <typename T>
void activation_backward(std::span<const T> y, std::span<const T> dy,
                         Activation act, std::span<T> dz) {
  const std::size_t n = y.size();
  switch (act) {
    case Activation::kIdentity:
      std::copy(dy.begin(), dy.end(), dz.begin());
      return;
    case Activation::kRelu:
      for (std::size_t i = 0; i < n; ++i) dz[i] = y[i] > T(0) ? dy[i] : T(0);
      return;
    case Activation::kSigmoid:
      for (std::size_t i = 0; i < n; ++i) dz[i] = dy[i] * y[i] * (T(1) - y[i]);
      return;
    case Activation::kTanh:
      for (std::size_t i = 0; i < n; ++i) dz[i] = dy[i] * (T(1) - y[i] * y[i]);
      return;
    case Activation::kSoftmax: {
      T dot = 0;
      for (std::size_t i = 0; i < n; ++i) dot += dy[i] * y[i];
      for (std::size_t i = 0; i < n; ++i) dz[i] = y[i] * (dy[i] - dot);
      return;
    }
  }
}

// out = W x + b with W of shape (m, n).
template <typename T>
void affine(std::span<const T> x, const Tensor<T> &W, const Tensor<T> &b,
            std::span<T> out) {
  const std::size_t m = W.rows();
  const std::size_t n = W.cols();
  for (std::size_t r = 0; r < m; ++r) {
    const T *w = W.values.data() + r * n;
    T acc = b[r];
    for (std::size_t c = 0; c < n; ++c) acc += w[c] * x[c];
    out[r] = acc;
  }
}

template <typename T>
void check_dense_shapes(std::size_t x_size, const Tensor<T> &W,
                        const Tensor<T> &b) {
  if (W.rank() != 2 || W.cols() != x_size || b.size() != W.rows()) {
    throw ShapeError("dense: W is " + std::to_string(W.rows()) + "x" +
                     std::to_string(W.cols()) + ", x has " +
                     std::to_string(x_size) + ", b has " +
                     std::to_string(b.size()));
  }
}

// act(W x + b).
template <typename T>
Tensor<T> dense(const Tensor<T> &x, const Tensor<T> &W, const Tensor<T> &b,
                Activation act) {
  check_dense_shapes(x.size(), W, b);
  Tensor<T> y({W.rows()});
  affine<T>(x.span(), W, b, y.span());
  activate<T>(y.span(), act);
  return y;
}

// Accumulates dW += dz x^T and db += dz. Writes dx = W^T dz when dx is
// nonempty.
template <typename T>
void dense_backward(std::span<const T> x, const Tensor<T> &W,
                    std::span<const T> dz, std::span<T> dW, std::span<T> db,
                    std::span<T> dx) {
  const std::size_t m = W.rows();
  const std::size_t n = W.cols();
  for (std::size_t r = 0; r < m; ++r) {
    const T g = dz[r];
    db[r] += g;
    if (g == T(0)) continue;
    T *dw = dW.data() + r * n;
    for (std::size_t c = 0; c < n; ++c) dw[c] += g * x[c];
  }
  if (dx.empty()) return;
  std::fill(dx.begin(), dx.end(), T(0));
  for (std::size_t r = 0; r < m; ++r) {
    const T g = dz[r];
    if (g == T(0)) continue;
    const T *w = W.values.data() + r * n;
    for (std::size_t c = 0; c < n; ++c) dx[c] += w[c] * g;
  }
}

}  // namespace offlang::nn

#endif  // OFFLANG_NN_DENSE_H_
