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

#ifndef OFFLANG_EMBEDDINGS_H_
#define OFFLANG_EMBEDDINGS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "offlang/text.h"

namespace offlang {

// Row 0 is padding (always zero), row 1 the unknown-token vector, vocabulary
// rows start at 2.
class EmbeddingMatrix {
 public:
  static constexpr std::size_t kPad = 0;
  static constexpr std::size_t kUnk = 1;
  static constexpr std::size_t kReserved = 2;

  EmbeddingMatrix() = default;
  EmbeddingMatrix(std::vector<std::string> tokens, std::size_t dim,
                  std::vector<double> weights, bool trainable);

  std::size_t dim() const { return dim_; }
  std::size_t rows() const { return tokens_.size() + kReserved; }
  bool trainable() const { return trainable_; }
  const std::vector<std::string> &tokens() const { return tokens_; }
  const std::vector<double> &weights() const { return weights_; }

  // Row of a token, kUnk when absent.
  std::size_t lookup(std::string_view token) const;
  bool contains(std::string_view token) const;
  std::span<const double> row(std::size_t r) const;
  std::span<const double> vector(std::string_view token) const {
    return row(lookup(token));
  }

  // Replaces all rows except padding. Used to write trained weights back.
  void set_weights(std::vector<double> weights);

  std::uint64_t checksum() const;

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t dim_ = 0;
  std::vector<double> weights_;
  bool trainable_ = false;
};

inline constexpr double kEmbeddingInitRange = 0.05;

// Trainable matrix with vocabulary rows drawn i.i.d. from
// U[-0.05, 0.05]. Padding and unknown rows start at zero.
EmbeddingMatrix init_random(const std::vector<std::string> &vocab,
                            std::size_t dim, std::uint64_t seed);

// Text .vec layout with optional `count dim` header. The result is frozen,
// the unknown row is the mean of every loaded vector. When `keep` is given,
// only those tokens are retained (the mean still covers the whole file).
EmbeddingMatrix load_pretrained_vec(
    const std::filesystem::path &path,
    const std::unordered_set<std::string> *keep = nullptr);
EmbeddingMatrix parse_vec(std::string_view content, const std::string &name,
                          const std::unordered_set<std::string> *keep = nullptr);

// Writes the vocabulary rows in .vec layout with a header, shortest
// round-trip decimal formatting.
std::string format_vec(const EmbeddingMatrix &m);
void save_vec(const EmbeddingMatrix &m, const std::filesystem::path &path);

struct EncodedSequence {
  std::vector<std::size_t> indices;  // exactly max_len entries
  std::size_t true_len = 0;          // non-padding prefix length
};

EncodedSequence encode(const EmbeddingMatrix &m, const TokenList &doc,
                       std::size_t max_len);

// Tokens occurring at least min_count times, in first-occurrence order.
std::vector<std::string> build_vocab(std::span<const TokenList> docs,
                                     std::size_t min_count = 1);

}  // namespace offlang

#endif  // OFFLANG_EMBEDDINGS_H_
