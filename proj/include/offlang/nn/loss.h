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

#ifndef OFFLANG_NN_LOSS_H_
#define OFFLANG_NN_LOSS_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "offlang/errors.h"

namespace offlang::nn {

class ClassWeights {
 public:
  explicit ClassWeights(std::vector<double> weights) : w_(std::move(weights)) {
    for (double v : w_) {
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw ArgumentError("class weights must be positive and finite");
      }
    }
  }

  static ClassWeights uniform(std::size_t k) {
    return ClassWeights(std::vector<double>(k, 1.0));
  }

  double operator[](std::size_t c) const { return w_.at(c); }
  std::size_t size() const { return w_.size(); }
  const std::vector<double> &values() const { return w_; }

  ClassWeights scaled(double factor) const {
    std::vector<double> w = w_;
    for (auto &v : w) v *= factor;
    return ClassWeights(std::move(w));
  }

 private:
  std::vector<double> w_;
};

inline constexpr double kProbEpsilon = 1e-7;

// -w(y) [y ln p + (1 - y) ln(1 - p)], p clamped to [eps, 1 - eps].
template <typename T>
T weighted_bce(T p, int y, const ClassWeights &w) {
  const T q = std::clamp(p, T(kProbEpsilon), T(1.0 - kProbEpsilon));
  const T w_y = static_cast<T>(w[static_cast<std::size_t>(y)]);
  return y == 1 ? -w_y * std::log(q) : -w_y * std::log(T(1) - q);
}

// dL/dp; zero where the clamp is active.
template <typename T>
T weighted_bce_grad(T p, int y, const ClassWeights &w) {
  if (p < T(kProbEpsilon) || p > T(1.0 - kProbEpsilon)) return T(0);
  const T w_y = static_cast<T>(w[static_cast<std::size_t>(y)]);
  return y == 1 ? -w_y / p : w_y / (T(1) - p);
}

// -w(y) ln p[y].
template <typename T>
T weighted_cce(std::span<const T> p, int y, const ClassWeights &w) {
  const T q = std::clamp(p[static_cast<std::size_t>(y)], T(kProbEpsilon),
                         T(1.0 - kProbEpsilon));
  return -static_cast<T>(w[static_cast<std::size_t>(y)]) * std::log(q);
}

// Writes dL/dp into grad.
template <typename T>
void weighted_cce_grad(std::span<const T> p, int y, const ClassWeights &w,
                       std::span<T> grad) {
  std::fill(grad.begin(), grad.end(), T(0));
  const auto idx = static_cast<std::size_t>(y);
  const T q = p[idx];
  if (q < T(kProbEpsilon) || q > T(1.0 - kProbEpsilon)) return;
  grad[idx] = -static_cast<T>(w[idx]) / q;
}

}  // namespace offlang::nn

#endif  // OFFLANG_NN_LOSS_H_
