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

#ifndef OFFLANG_FEATURES_H_
#define OFFLANG_FEATURES_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "offlang/text.h"

namespace offlang {

enum class NgramMode { kWord, kChar };

struct NgramRange {
  int min_n = 1;
  int max_n = 1;
};

struct SparseEntry {
  std::size_t index = 0;
  double value = 0.0;
};
using SparseVector = std::vector<SparseEntry>;

// Default n-gram ranges: word (1, 3), character (2, 4).
NgramRange default_ngram_range(NgramMode mode);

// All n-grams of a document in order of occurrence. Word n-grams join tokens
// with a space; char n-grams run over the code points of the space-joined
// tokens.
std::vector<std::string> extract_ngrams(const TokenList &doc, NgramRange range,
                                        NgramMode mode);

// Document frequencies over a fitted corpus. Columns are assigned in
// lexicographic n-gram order.
class TfIdfModel {
 public:
  static TfIdfModel fit(std::span<const TokenList> docs, NgramRange range,
                        NgramMode mode, std::size_t min_df = 1);

  // tf(g) * (ln(n_docs / df(g)) + 1) for every in-vocabulary n-gram, sorted
  // by column. No length normalization.
  SparseVector transform(const TokenList &doc) const;
  std::vector<double> transform_dense(const TokenList &doc) const;

  std::size_t size() const { return terms_.size(); }
  std::size_t n_docs() const { return n_docs_; }
  NgramRange range() const { return range_; }
  NgramMode mode() const { return mode_; }
  const std::vector<std::string> &terms() const { return terms_; }
  std::optional<std::size_t> column(std::string_view ngram) const;
  std::size_t doc_freq(std::string_view ngram) const;
  double idf(std::size_t column) const;

  nlohmann::json to_json() const;
  static TfIdfModel from_json(const nlohmann::json &j);

 private:
  std::vector<std::string> terms_;
  std::vector<std::size_t> df_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t n_docs_ = 0;
  NgramRange range_;
  NgramMode mode_ = NgramMode::kWord;
};

// Word -> integer valence in [-5, 5], AFINN style.
class SentimentLexicon {
 public:
  explicit SentimentLexicon(std::map<std::string, int> scores);

  std::optional<int> score(std::string_view word) const;
  const std::map<std::string, int, std::less<>> &scores() const { return scores_; }

 private:
  std::map<std::string, int, std::less<>> scores_;
};

// `word<TAB>integer` per line.
SentimentLexicon load_sentiment_lexicon(const std::filesystem::path &path);

inline constexpr double kCompoundAlpha = 15.0;

// s / sqrt(s^2 + 15) where s sums the lexicon scores of the tokens.
double sentiment_compound(const SentimentLexicon &lex, const TokenList &doc);

// Vowel-group count (aeiouyæøå), trailing silent e dropped for words of three
// or more letters, minimum 1.
int count_syllables(std::string_view word);

struct TextStats {
  std::size_t words = 0;
  std::size_t sentences = 1;
  std::size_t syllables = 0;
};

// Words are non-URL tokens, sentences are runs of .!? outside URLs (at
// least one).
TextStats text_stats(std::string_view text);

double flesch_reading_ease(const TextStats &stats);
double flesch_reading_ease(std::string_view text);
double fk_grade_level(const TextStats &stats);
double fk_grade_level(std::string_view text);

struct SurfaceStats {
  std::size_t n_chars = 0;
  std::size_t n_syllables = 0;
  std::size_t n_words = 0;
  std::size_t n_hashtags = 0;
  std::size_t n_urls = 0;
  std::size_t n_mentions = 0;
  std::size_t n_retweets = 0;
};

SurfaceStats surface_counts(std::string_view text);

struct Channel {
  std::string name;
  std::size_t offset = 0;
  std::size_t length = 0;

  friend bool operator==(const Channel &, const Channel &) = default;
};

struct FeatureVector {
  std::vector<double> values;
  std::vector<Channel> layout;
};

inline constexpr std::size_t kSurfaceChannelSize = 7;
inline constexpr std::size_t kReadingChannelSize = 2;

// Channel layout [tfidf | pos_tfidf | sentiment(1) | counts(7) | reading(2)].
std::vector<Channel> aux_layout(std::size_t tfidf_size, std::size_t pos_size);

// Builds the auxiliary feature vector. The POS block has the POS model's
// width (zero when no POS model) and is all zeros when no tags are given.
FeatureVector build_aux_vector(std::string_view text, const TfIdfModel &tfidf,
                               const SentimentLexicon *lex,
                               const TokenList *pos_tags,
                               const TfIdfModel *pos_tfidf);

// Per-post POS tag sequences keyed by post id.
using PosTagMap = std::unordered_map<std::string, TokenList>;

// Lines of `post_id<TAB>token/TAG token/TAG ...`; the tag is the text after
// the last '/'.
PosTagMap load_pos_tags(const std::filesystem::path &path);

// Fitted extractor: owns the text models used to assemble aux vectors.
struct AuxFeatureConfig {
  NgramRange word_range{1, 3};
  NgramRange pos_range{1, 3};
  std::size_t min_df = 2;
};

class AuxFeatureExtractor {
 public:
  AuxFeatureExtractor() = default;

  // texts and (optional) pos tags are aligned. pos_tags may be empty.
  static AuxFeatureExtractor fit(std::span<const std::string> texts,
                                 std::span<const TokenList> pos_tags,
                                 std::optional<SentimentLexicon> lex,
                                 const AuxFeatureConfig &config);

  FeatureVector build(std::string_view text, const TokenList *pos_tags) const;
  std::size_t size() const;
  std::vector<Channel> layout() const;
  bool has_pos() const { return pos_tfidf_.has_value(); }

  nlohmann::json to_json() const;
  static AuxFeatureExtractor from_json(const nlohmann::json &j);

 private:
  TfIdfModel tfidf_;
  std::optional<TfIdfModel> pos_tfidf_;
  std::optional<SentimentLexicon> lex_;
};

}  // namespace offlang

#endif  // OFFLANG_FEATURES_H_
