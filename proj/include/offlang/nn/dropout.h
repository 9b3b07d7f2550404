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

#ifndef OFFLANG_NN_DROPOUT_H_
#define OFFLANG_NN_DROPOUT_H_

#include <cstddef>
#include <string>
#include <vector>

#include "offlang/errors.h"
#include "offlang/nn/tensor.h"
#include "offlang/random.h"

namespace offlang::nn {

inline void check_dropout_rate(double rate) {
  if (!(rate >= 0.0 && rate < 1.0)) {
    throw ArgumentError("dropout rate must lie in [0, 1), got " +
                        std::to_string(rate));
  }
}

// Inverted-dropout mask: 0 with probability rate, else 1 / (1 - rate).
template <typename T>
void dropout_mask(std::size_t n, double rate, Rng &rng, std::vector<T> &mask) {
  check_dropout_rate(rate);
  mask.resize(n);
  const T keep = static_cast<T>(1.0 / (1.0 - rate));
  for (auto &m : mask) m = (rate > 0.0 && rng.bernoulli(rate)) ? T(0) : keep;
}

template <typename T>
Tensor<T> dropout(const Tensor<T> &x, double rate, bool training, Rng &rng) {
  check_dropout_rate(rate);
  if (!training || rate == 0.0) return x;
  std::vector<T> mask;
  dropout_mask<T>(x.size(), rate, rng, mask);
  Tensor<T> y = x;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] *= mask[i];
  return y;
}

}  // namespace offlang::nn

#endif  // OFFLANG_NN_DROPOUT_H_
