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

#ifndef OFFLANG_NN_ADAM_H_
#define OFFLANG_NN_ADAM_H_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "offlang/errors.h"
#include "offlang/nn/tensor.h"

namespace offlang::nn {

template <typename T>
struct AdamState {
  std::vector<T> m;
  std::vector<T> v;
  std::int64_t t = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  AdamState() = default;
  explicit AdamState(std::size_t n) : m(n, T(0)), v(n, T(0)) {}
};

// One bias-corrected Adam step; increments state.t.
template <typename T>
void adam_update(std::span<T> params, std::span<const T> grads,
                 AdamState<T> &state, double lr) {
  if (params.size() != grads.size() || state.m.size() != params.size() ||
      state.v.size() != params.size()) {
    throw ShapeError("adam_update: parameter, gradient and state sizes differ");
  }
  ++state.t;
  const double c1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.t));
  const double c2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.t));
  const T b1 = static_cast<T>(state.beta1);
  const T b2 = static_cast<T>(state.beta2);
  for (std::size_t i = 0; i < params.size(); ++i) {
    const T g = grads[i];
    state.m[i] = b1 * state.m[i] + (T(1) - b1) * g;
    state.v[i] = b2 * state.v[i] + (T(1) - b2) * g * g;
    const double m_hat = static_cast<double>(state.m[i]) / c1;
    const double v_hat = static_cast<double>(state.v[i]) / c2;
    params[i] -= static_cast<T>(lr * m_hat / (std::sqrt(v_hat) + state.epsilon));
  }
}

// Adam over a fixed list of parameter blocks.
template <typename T>
class AdamOptimizer {
 public:
  explicit AdamOptimizer(const std::vector<ParamRef<T>> &params) {
    for (const auto &p : params) states_.emplace_back(p.value.size());
  }

  void step(const std::vector<ParamRef<T>> &params, double lr) {
    for (std::size_t i = 0; i < params.size(); ++i) {
      adam_update<T>(params[i].value, params[i].grad, states_[i], lr);
    }
  }

 private:
  std::vector<AdamState<T>> states_;
};

}  // namespace offlang::nn

#endif  // OFFLANG_NN_ADAM_H_
