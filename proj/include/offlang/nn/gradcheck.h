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

#ifndef OFFLANG_NN_GRADCHECK_H_
#define OFFLANG_NN_GRADCHECK_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "offlang/errors.h"
#include "offlang/nn/tensor.h"
#include "offlang/random.h"

namespace offlang::nn {

struct GradCheckOptions {
  double step = 1e-5;
  // Coordinates sampled per parameter block; 0 checks every coordinate.
  std::size_t max_coords_per_block = 0;
  std::uint64_t seed = 0;
  // Denominator floor, so coordinates whose true gradient is ~0 are compared
  // on an absolute scale.
  double floor = 1e-6;
};

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::size_t checked = 0;
  std::string worst;  // "block[index]" of the worst coordinate
};

inline double relative_error(double analytic, double numeric, double floor) {
  const double denom = std::max({std::abs(analytic), std::abs(numeric), floor});
  return std::abs(analytic - numeric) / denom;
}

// Compares the analytic gradients stored in params[*].grad against central
// finite differences of `loss`. `loss` must be a pure function of the
// parameter values.
inline GradCheckResult gradient_check(const std::function<double()> &loss,
                                      const std::vector<ParamRef<double>> &params,
                                      const GradCheckOptions &opts = {}) {
  const auto eval = [&]() {
    const double v = loss();
    if (!std::isfinite(v)) throw NumericError("gradient_check: non-finite loss");
    return v;
  };
  eval();
  Rng rng(opts.seed);
  GradCheckResult result;
  for (const auto &p : params) {
    std::vector<std::size_t> coords(p.value.size());
    std::iota(coords.begin(), coords.end(), std::size_t{0});
    if (opts.max_coords_per_block > 0 && coords.size() > opts.max_coords_per_block) {
      rng.shuffle(std::span<std::size_t>(coords));
      coords.resize(opts.max_coords_per_block);
      std::sort(coords.begin(), coords.end());
    }
    for (std::size_t idx : coords) {
      const double saved = p.value[idx];
      p.value[idx] = saved + opts.step;
      const double up = eval();
      p.value[idx] = saved - opts.step;
      const double down = eval();
      p.value[idx] = saved;
      const double numeric = (up - down) / (2.0 * opts.step);
      const double err = relative_error(p.grad[idx], numeric, opts.floor);
      ++result.checked;
      if (err > result.max_rel_error || result.worst.empty()) {
        if (err >= result.max_rel_error) {
          result.max_rel_error = err;
          result.worst = p.name + "[" + std::to_string(idx) + "]";
        }
      }
    }
  }
  return result;
}

}  // namespace offlang::nn

#endif  // OFFLANG_NN_GRADCHECK_H_
