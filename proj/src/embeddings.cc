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

#include "offlang/embeddings.h"

#include <charconv>
#include <cstring>
#include <map>

#include "offlang/corpus.h"
#include "offlang/errors.h"
#include "offlang/random.h"

namespace offlang {
namespace {

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
    if (end > pos) out.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view s, T &out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

EmbeddingMatrix::EmbeddingMatrix(std::vector<std::string> tokens,
                                 std::size_t dim, std::vector<double> weights,
                                 bool trainable)
    : tokens_(std::move(tokens)),
      dim_(dim),
      weights_(std::move(weights)),
      trainable_(trainable) {
  if (dim_ == 0) throw ArgumentError("embedding dimension must be positive");
  if (weights_.size() != rows() * dim_) {
    throw ShapeError("embedding weights have " +
                     std::to_string(weights_.size()) + " values, expected " +
                     std::to_string(rows() * dim_));
  }
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (!index_.emplace(tokens_[i], i + kReserved).second) {
      throw ArgumentError("duplicate vocabulary token '" + tokens_[i] + "'");
    }
  }
  std::fill(weights_.begin(), weights_.begin() + static_cast<std::ptrdiff_t>(dim_), 0.0);
}

std::size_t EmbeddingMatrix::lookup(std::string_view token) const {
  const auto it = index_.find(std::string(token));
  return it == index_.end() ? kUnk : it->second;
}

bool EmbeddingMatrix::contains(std::string_view token) const {
  return index_.count(std::string(token)) > 0;
}

std::span<const double> EmbeddingMatrix::row(std::size_t r) const {
  return std::span<const double>(weights_).subspan(r * dim_, dim_);
}

void EmbeddingMatrix::set_weights(std::vector<double> weights) {
  if (weights.size() != weights_.size()) {
    throw ShapeError("set_weights: size mismatch");
  }
  weights_ = std::move(weights);
  std::fill(weights_.begin(), weights_.begin() + static_cast<std::ptrdiff_t>(dim_), 0.0);
}

std::uint64_t EmbeddingMatrix::checksum() const {
  std::uint64_t h = fnv1a(std::to_string(dim_));
  for (const auto &t : tokens_) {
    h = fnv1a(t, h);
    h = fnv1a(std::string_view("\0", 1), h);
  }
  return fnv1a(std::string_view(reinterpret_cast<const char *>(weights_.data()),
                                weights_.size() * sizeof(double)),
               h);
}

EmbeddingMatrix init_random(const std::vector<std::string> &vocab,
                            std::size_t dim, std::uint64_t seed) {
  if (dim < 1) throw ArgumentError("embedding dimension must be >= 1");
  const std::size_t rows = vocab.size() + EmbeddingMatrix::kReserved;
  std::vector<double> w(rows * dim, 0.0);
  Rng rng(seed);
  for (std::size_t i = EmbeddingMatrix::kReserved * dim; i < w.size(); ++i) {
    w[i] = rng.uniform(-kEmbeddingInitRange, kEmbeddingInitRange);
  }
  return EmbeddingMatrix(vocab, dim, std::move(w), /*trainable=*/true);
}

EmbeddingMatrix parse_vec(std::string_view content, const std::string &name,
                          const std::unordered_set<std::string> *keep) {
  std::size_t dim = 0;
  std::vector<std::string> tokens;
  std::vector<double> kept;
  std::vector<double> sum;
  std::size_t n_loaded = 0;
  std::unordered_set<std::string> seen;

  std::size_t lineno = 0;
  std::size_t start = 0;
  bool first = true;
  while (start < content.size()) {
    std::size_t nl = content.find('\n', start);
    if (nl == std::string_view::npos) nl = content.size();
    std::string_view line = content.substr(start, nl - start);
    start = nl + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto fields = split_spaces(line);
    if (fields.empty()) continue;

    if (first) {
      first = false;
      std::size_t count = 0;
      std::size_t header_dim = 0;
      if (fields.size() == 2 && parse_number(fields[0], count) &&
          parse_number(fields[1], header_dim)) {
        if (header_dim == 0) throw ParseError(name, lineno, "header dimension is zero");
        dim = header_dim;
        continue;
      }
    }
    if (fields.size() < 2) throw ParseError(name, lineno, "expected token and values");
    const std::size_t line_dim = fields.size() - 1;
    if (dim == 0) dim = line_dim;
    if (line_dim != dim) {
      throw ParseError(name, lineno,
                       "expected " + std::to_string(dim) + " values, got " +
                           std::to_string(line_dim));
    }
    if (sum.empty()) sum.assign(dim, 0.0);
    std::vector<double> values(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      if (!parse_number(fields[k + 1], values[k])) {
        throw ParseError(name, lineno,
                         "bad number '" + std::string(fields[k + 1]) + "'");
      }
    }
    std::string token(fields[0]);
    if (!seen.insert(token).second) continue;
    ++n_loaded;
    for (std::size_t k = 0; k < dim; ++k) sum[k] += values[k];
    if (keep == nullptr || keep->count(token) > 0) {
      tokens.push_back(std::move(token));
      kept.insert(kept.end(), values.begin(), values.end());
    }
  }
  if (n_loaded == 0) throw ParseError(name, 0, "no embedding vectors found");

  std::vector<double> weights(EmbeddingMatrix::kReserved * dim, 0.0);
  for (std::size_t k = 0; k < dim; ++k) {
    weights[dim + k] = sum[k] / static_cast<double>(n_loaded);
  }
  weights.insert(weights.end(), kept.begin(), kept.end());
  return EmbeddingMatrix(std::move(tokens), dim, std::move(weights),
                         /*trainable=*/false);
}

EmbeddingMatrix load_pretrained_vec(const std::filesystem::path &path,
                                    const std::unordered_set<std::string> *keep) {
  return parse_vec(read_file(path), path.string(), keep);
}

std::string format_vec(const EmbeddingMatrix &m) {
  std::string out = std::to_string(m.tokens().size()) + " " +
                    std::to_string(m.dim()) + "\n";
  char buf[64];
  for (std::size_t i = 0; i < m.tokens().size(); ++i) {
    out += m.tokens()[i];
    for (double v : m.row(i + EmbeddingMatrix::kReserved)) {
      const auto res = std::to_chars(buf, buf + sizeof(buf), v);
      out += ' ';
      out.append(buf, res.ptr);
    }
    out += '\n';
  }
  return out;
}

void save_vec(const EmbeddingMatrix &m, const std::filesystem::path &path) {
  write_file(path, format_vec(m));
}

EncodedSequence encode(const EmbeddingMatrix &m, const TokenList &doc,
                       std::size_t max_len) {
  if (max_len < 1) throw ArgumentError("max_len must be >= 1");
  EncodedSequence seq;
  seq.indices.assign(max_len, EmbeddingMatrix::kPad);
  seq.true_len = std::min(doc.size(), max_len);
  for (std::size_t i = 0; i < seq.true_len; ++i) {
    seq.indices[i] = m.lookup(doc[i]);
  }
  return seq;
}

std::vector<std::string> build_vocab(std::span<const TokenList> docs,
                                     std::size_t min_count) {
  std::unordered_map<std::string, std::size_t> counts;
  std::vector<std::string> order;
  for (const auto &doc : docs) {
    for (const auto &t : doc) {
      if (counts[t]++ == 0) order.push_back(t);
    }
  }
  std::vector<std::string> out;
  for (auto &t : order) {
    if (counts[t] >= min_count) out.push_back(std::move(t));
  }
  return out;
}

}  // namespace offlang
