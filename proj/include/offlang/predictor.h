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

#ifndef OFFLANG_PREDICTOR_H_
#define OFFLANG_PREDICTOR_H_

#include <span>
#include <vector>

#include "offlang/corpus.h"
#include "offlang/labels.h"

namespace offlang {

// Anything that maps posts to class indices of one sub-task.
class Predictor {
 public:
  virtual ~Predictor() = default;
  virtual Task task() const = 0;
  virtual std::vector<int> predict(std::span<const Post> posts) const = 0;
};

}  // namespace offlang

#endif  // OFFLANG_PREDICTOR_H_
