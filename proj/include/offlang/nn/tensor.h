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

#ifndef OFFLANG_NN_TENSOR_H_
#define OFFLANG_NN_TENSOR_H_

#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "offlang/errors.h"

namespace offlang::nn {

// Dense row-major array with an explicit shape.
template <typename T>
struct Tensor {
  std::vector<std::size_t> shape;
  std::vector<T> values;

  Tensor() = default;
  explicit Tensor(std::vector<std::size_t> s)
      : shape(std::move(s)), values(count(shape), T(0)) {}
  Tensor(std::vector<std::size_t> s, std::vector<T> v)
      : shape(std::move(s)), values(std::move(v)) {
    if (values.size() != count(shape)) {
      throw ShapeError("tensor: " + std::to_string(values.size()) +
                       " values for shape of " + std::to_string(count(shape)));
    }
  }

  static Tensor vector(std::vector<T> v) {
    const std::size_t n = v.size();
    return Tensor({n}, std::move(v));
  }

  static std::size_t count(const std::vector<std::size_t> &s) {
    return std::accumulate(s.begin(), s.end(), std::size_t{1},
                           std::multiplies<>());
  }

  std::size_t size() const { return values.size(); }
  std::size_t rank() const { return shape.size(); }
  std::size_t rows() const { return shape.empty() ? 0 : shape[0]; }
  std::size_t cols() const { return shape.size() < 2 ? 1 : shape[1]; }

  T &operator[](std::size_t i) { return values[i]; }
  const T &operator[](std::size_t i) const { return values[i]; }
  T &at(std::size_t r, std::size_t c) { return values[r * cols() + c]; }
  const T &at(std::size_t r, std::size_t c) const { return values[r * cols() + c]; }

  std::span<T> span() { return values; }
  std::span<const T> span() const { return values; }

  void fill(T v) { std::fill(values.begin(), values.end(), v); }
};

// Named view of one parameter block and its gradient accumulator.
template <typename T>
struct ParamRef {
  std::string name;
  std::span<T> value;
  std::span<T> grad;
};

}  // namespace offlang::nn

#endif  // OFFLANG_NN_TENSOR_H_
