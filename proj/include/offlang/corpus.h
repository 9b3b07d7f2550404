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

#ifndef OFFLANG_CORPUS_H_
#define OFFLANG_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "offlang/labels.h"

namespace offlang {

enum class Source { kFacebook, kReddit, kTwitter, kOther };

std::string_view to_string(Source s);
Source parse_source(std::string_view s);

struct Post {
  std::string id;
  std::string text;
  Source source = Source::kOther;
};

struct LabeledPost {
  Post post;
  HierLabel label;
};

// Ordered labeled posts. Construction validates every label and rejects
// duplicate ids and blank texts.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::string name, std::vector<LabeledPost> items);

  const std::string &name() const { return name_; }
  const std::vector<LabeledPost> &items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const LabeledPost &operator[](std::size_t i) const { return items_[i]; }

  std::vector<Post> posts() const;

  // Posts for which the task applies: all for A, gold OFF for B, gold TIN
  // for C.
  Dataset restrict_to(Task task) const;

  // Gold class indices for the task; every item must be applicable.
  std::vector<int> task_labels(Task task) const;

  // FNV-1a over ids, texts and labels in order.
  std::uint64_t checksum() const;

 private:
  std::string name_;
  std::vector<LabeledPost> items_;
};

struct LabelDistribution {
  std::map<std::string, std::size_t> counts;  // keyed by HierLabel::pattern()
  std::size_t total = 0;

  std::size_t count(const std::string &pattern) const;
  friend bool operator==(const LabelDistribution &,
                         const LabelDistribution &) = default;
};

LabelDistribution distribution(const Dataset &d);
LabelDistribution operator+(const LabelDistribution &x,
                            const LabelDistribution &y);

// Set of lowercase terms; must be nonempty.
class Lexicon {
 public:
  explicit Lexicon(const std::vector<std::string> &terms);

  bool contains(std::string_view token) const;
  const std::set<std::string, std::less<>> &terms() const { return terms_; }

 private:
  std::set<std::string, std::less<>> terms_;
};

// OLID-style TSV: header `id tweet subtask_a subtask_b subtask_c` with an
// optional trailing `source` column; `NULL` marks absent labels.
Dataset load_olid_tsv(const std::filesystem::path &path);
Dataset parse_olid_tsv(std::string_view content, const std::string &name);
std::string format_olid_tsv(const Dataset &d);
void write_olid_tsv(const Dataset &d, const std::filesystem::path &path);

// Unlabeled post lists: the same header with only `id` and `tweet` required.
std::vector<Post> load_posts_tsv(const std::filesystem::path &path);
std::string format_posts_tsv(std::span<const Post> posts);

Lexicon load_lexicon(const std::filesystem::path &path);

// Per label pattern the train side gets round(fraction * count) posts chosen
// by a seeded shuffle; the rest go to test. Original order is kept on both
// sides.
std::pair<Dataset, Dataset> stratified_split(const Dataset &d,
                                             double train_fraction,
                                             std::uint64_t seed);

// Replaces whole-token, case-insensitive occurrences of each name with
// `@USER`. Multi-token names match consecutive tokens.
std::string anonymize(std::string_view text,
                      const std::vector<std::string> &names);

// Posts whose token set hits the lexicon, in input order.
std::vector<Post> lexicon_filter(std::span<const Post> posts,
                                 const Lexicon &lex);

std::string read_file(const std::filesystem::path &path);
void write_file(const std::filesystem::path &path, std::string_view content);
std::uint64_t fnv1a(std::string_view bytes,
                    std::uint64_t seed = 14695981039346656037ull);

}  // namespace offlang

#endif  // OFFLANG_CORPUS_H_
