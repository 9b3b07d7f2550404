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

#include "offlang/features.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include "offlang/corpus.h"
#include "offlang/errors.h"

namespace offlang {
namespace {

bool is_vowel(char32_t cp) {
  switch (cp) {
    case U'a': case U'e': case U'i': case U'o': case U'u': case U'y':
    case U'æ': case U'ø': case U'å':
      return true;
    default:
      return false;
  }
}

std::string_view strip_marker(const TokenSpan &span) {
  std::string_view t = span.text;
  if (span.kind == TokenKind::kMention || span.kind == TokenKind::kHashtag) {
    t.remove_prefix(1);
  }
  return t;
}

std::string_view mode_name(NgramMode m) {
  return m == NgramMode::kWord ? "word" : "char";
}

}  // namespace

NgramRange default_ngram_range(NgramMode mode) {
  return mode == NgramMode::kWord ? NgramRange{1, 3} : NgramRange{2, 4};
}

std::vector<std::string> extract_ngrams(const TokenList &doc, NgramRange range,
                                        NgramMode mode) {
  std::vector<std::string> out;
  if (mode == NgramMode::kWord) {
    for (int n = range.min_n; n <= range.max_n; ++n) {
      const auto len = static_cast<std::size_t>(n);
      for (std::size_t i = 0; i + len <= doc.size(); ++i) {
        std::string gram = doc[i];
        for (std::size_t k = 1; k < len; ++k) {
          gram += ' ';
          gram += doc[i + k];
        }
        out.push_back(std::move(gram));
      }
    }
    return out;
  }
  std::string joined;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    if (i > 0) joined += ' ';
    joined += doc[i];
  }
  const std::u32string cps = decode_utf8(joined);
  for (int n = range.min_n; n <= range.max_n; ++n) {
    const auto len = static_cast<std::size_t>(n);
    for (std::size_t i = 0; i + len <= cps.size(); ++i) {
      out.push_back(encode_utf8(std::u32string_view(cps).substr(i, len)));
    }
  }
  return out;
}

TfIdfModel TfIdfModel::fit(std::span<const TokenList> docs, NgramRange range,
                           NgramMode mode, std::size_t min_df) {
  if (docs.empty()) throw ArgumentError("cannot fit TF-IDF on an empty corpus");
  if (range.min_n < 1 || range.max_n < range.min_n) {
    throw ArgumentError("invalid n-gram range (" + std::to_string(range.min_n) +
                        ", " + std::to_string(range.max_n) + ")");
  }
  std::map<std::string, std::size_t> df;
  for (const auto &doc : docs) {
    auto grams = extract_ngrams(doc, range, mode);
    std::sort(grams.begin(), grams.end());
    grams.erase(std::unique(grams.begin(), grams.end()), grams.end());
    for (auto &g : grams) ++df[std::move(g)];
  }
  TfIdfModel m;
  m.n_docs_ = docs.size();
  m.range_ = range;
  m.mode_ = mode;
  for (auto &[gram, count] : df) {
    if (count < std::max<std::size_t>(min_df, 1)) continue;
    m.index_.emplace(gram, m.terms_.size());
    m.terms_.push_back(gram);
    m.df_.push_back(count);
  }
  return m;
}

std::optional<std::size_t> TfIdfModel::column(std::string_view ngram) const {
  const auto it = index_.find(std::string(ngram));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t TfIdfModel::doc_freq(std::string_view ngram) const {
  const auto col = column(ngram);
  return col ? df_[*col] : 0;
}

double TfIdfModel::idf(std::size_t col) const {
  return std::log(static_cast<double>(n_docs_) /
                  static_cast<double>(df_[col])) +
         1.0;
}

SparseVector TfIdfModel::transform(const TokenList &doc) const {
  std::map<std::size_t, std::size_t> tf;
  for (const auto &g : extract_ngrams(doc, range_, mode_)) {
    const auto it = index_.find(g);
    if (it != index_.end()) ++tf[it->second];
  }
  SparseVector out;
  out.reserve(tf.size());
  for (const auto &[col, count] : tf) {
    out.push_back({col, static_cast<double>(count) * idf(col)});
  }
  return out;
}

std::vector<double> TfIdfModel::transform_dense(const TokenList &doc) const {
  std::vector<double> out(size(), 0.0);
  for (const auto &e : transform(doc)) out[e.index] = e.value;
  return out;
}

nlohmann::json TfIdfModel::to_json() const {
  return {{"terms", terms_},
          {"doc_freq", df_},
          {"n_docs", n_docs_},
          {"min_n", range_.min_n},
          {"max_n", range_.max_n},
          {"mode", mode_name(mode_)}};
}

TfIdfModel TfIdfModel::from_json(const nlohmann::json &j) {
  TfIdfModel m;
  m.terms_ = j.at("terms").get<std::vector<std::string>>();
  m.df_ = j.at("doc_freq").get<std::vector<std::size_t>>();
  m.n_docs_ = j.at("n_docs").get<std::size_t>();
  m.range_ = {j.at("min_n").get<int>(), j.at("max_n").get<int>()};
  m.mode_ = j.at("mode").get<std::string>() == "char" ? NgramMode::kChar
                                                      : NgramMode::kWord;
  if (m.terms_.size() != m.df_.size()) {
    throw ValidationError("tfidf: terms and doc_freq lengths differ");
  }
  for (std::size_t i = 0; i < m.terms_.size(); ++i) {
    if (m.df_[i] < 1 || m.df_[i] > m.n_docs_) {
      throw ValidationError("tfidf: doc_freq out of range for '" +
                            m.terms_[i] + "'");
    }
    m.index_.emplace(m.terms_[i], i);
  }
  return m;
}

SentimentLexicon::SentimentLexicon(std::map<std::string, int> scores) {
  for (auto &[word, score] : scores) {
    if (score < -5 || score > 5) {
      throw ValidationError("sentiment score for '" + word +
                            "' outside [-5, 5]");
    }
    scores_.emplace(to_lower(word), score);
  }
  if (scores_.empty()) throw ValidationError("sentiment lexicon is empty");
}

std::optional<int> SentimentLexicon::score(std::string_view word) const {
  const auto it = scores_.find(word);
  if (it == scores_.end()) return std::nullopt;
  return it->second;
}

SentimentLexicon load_sentiment_lexicon(const std::filesystem::path &path) {
  const std::string content = read_file(path);
  std::map<std::string, int> scores;
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start < content.size()) {
    std::size_t nl = content.find('\n', start);
    if (nl == std::string::npos) nl = content.size();
    std::string_view line(content.data() + start, nl - start);
    start = nl + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) continue;
    const std::size_t tab = line.rfind('\t');
    if (tab == std::string_view::npos) {
      throw ParseError(path.string(), lineno, "expected word<TAB>score");
    }
    const std::string_view value = trim(line.substr(tab + 1));
    int score = 0;
    const auto [ptr, ec] =
        std::from_chars(value.data(), value.data() + value.size(), score);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
      throw ParseError(path.string(), lineno,
                       "bad score '" + std::string(value) + "'");
    }
    if (score < -5 || score > 5) {
      throw ParseError(path.string(), lineno, "score outside [-5, 5]");
    }
    scores[std::string(trim(line.substr(0, tab)))] = score;
  }
  return SentimentLexicon(std::move(scores));
}

double sentiment_compound(const SentimentLexicon &lex, const TokenList &doc) {
  double sum = 0.0;
  for (const auto &token : doc) {
    if (const auto s = lex.score(token)) sum += *s;
  }
  if (sum == 0.0) return 0.0;
  return sum / std::sqrt(sum * sum + kCompoundAlpha);
}

int count_syllables(std::string_view word) {
  if (word.empty()) throw ArgumentError("count_syllables: empty word");
  std::u32string cps = decode_utf8(word);
  for (auto &cp : cps) cp = to_lower(cp);
  int groups = 0;
  bool in_group = false;
  for (char32_t cp : cps) {
    const bool v = is_vowel(cp);
    if (v && !in_group) ++groups;
    in_group = v;
  }
  const std::size_t n = cps.size();
  if (n >= 3 && cps[n - 1] == U'e' && !is_vowel(cps[n - 2])) --groups;
  return std::max(groups, 1);
}

TextStats text_stats(std::string_view text) {
  TextStats stats;
  const auto spans = tokenize_spans(text);
  std::vector<bool> masked(text.size(), false);
  for (const auto &span : spans) {
    if (span.kind == TokenKind::kUrl) {
      std::fill(masked.begin() + static_cast<std::ptrdiff_t>(span.begin),
                masked.begin() + static_cast<std::ptrdiff_t>(span.end), true);
      continue;
    }
    ++stats.words;
    const std::string_view body = strip_marker(span);
    if (!body.empty()) stats.syllables += count_syllables(body);
  }
  std::size_t runs = 0;
  bool in_run = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    const bool terminal = !masked[i] && (c == '.' || c == '!' || c == '?');
    if (terminal && !in_run) ++runs;
    in_run = terminal;
  }
  stats.sentences = std::max<std::size_t>(runs, 1);
  return stats;
}

double flesch_reading_ease(const TextStats &stats) {
  if (stats.words == 0) throw ArgumentError("flesch_reading_ease: no words");
  const double wps = static_cast<double>(stats.words) /
                     static_cast<double>(std::max<std::size_t>(stats.sentences, 1));
  const double spw = static_cast<double>(stats.syllables) /
                     static_cast<double>(stats.words);
  return 206.835 - 1.015 * wps - 84.6 * spw;
}

double flesch_reading_ease(std::string_view text) {
  return flesch_reading_ease(text_stats(text));
}

double fk_grade_level(const TextStats &stats) {
  if (stats.words == 0) throw ArgumentError("fk_grade_level: no words");
  const double wps = static_cast<double>(stats.words) /
                     static_cast<double>(std::max<std::size_t>(stats.sentences, 1));
  const double spw = static_cast<double>(stats.syllables) /
                     static_cast<double>(stats.words);
  return 0.39 * wps + 11.8 * spw - 15.59;
}

double fk_grade_level(std::string_view text) {
  return fk_grade_level(text_stats(text));
}

SurfaceStats surface_counts(std::string_view text) {
  SurfaceStats s;
  s.n_chars = codepoint_count(text);
  for (const auto &span : tokenize_spans(text)) {
    ++s.n_words;
    switch (span.kind) {
      case TokenKind::kUrl:
        ++s.n_urls;
        continue;
      case TokenKind::kMention:
        ++s.n_mentions;
        break;
      case TokenKind::kHashtag:
        ++s.n_hashtags;
        break;
      case TokenKind::kWord:
        if (span.text == "rt") ++s.n_retweets;
        break;
    }
    const std::string_view body = strip_marker(span);
    if (!body.empty()) s.n_syllables += count_syllables(body);
  }
  return s;
}

std::vector<Channel> aux_layout(std::size_t tfidf_size, std::size_t pos_size) {
  std::vector<Channel> layout;
  std::size_t offset = 0;
  const auto add = [&](std::string name, std::size_t len) {
    layout.push_back({std::move(name), offset, len});
    offset += len;
  };
  add("tfidf", tfidf_size);
  add("pos_tfidf", pos_size);
  add("sentiment", 1);
  add("counts", kSurfaceChannelSize);
  add("reading", kReadingChannelSize);
  return layout;
}

FeatureVector build_aux_vector(std::string_view text, const TfIdfModel &tfidf,
                               const SentimentLexicon *lex,
                               const TokenList *pos_tags,
                               const TfIdfModel *pos_tfidf) {
  if (pos_tags != nullptr && pos_tfidf == nullptr) {
    throw ArgumentError("POS tags supplied without a fitted POS TF-IDF model");
  }
  FeatureVector fv;
  fv.layout = aux_layout(tfidf.size(), pos_tfidf ? pos_tfidf->size() : 0);
  const Channel &last = fv.layout.back();
  fv.values.assign(last.offset + last.length, 0.0);

  const TokenList tokens = tokenize(text);
  for (const auto &e : tfidf.transform(tokens)) {
    fv.values[fv.layout[0].offset + e.index] = e.value;
  }
  if (pos_tags != nullptr) {
    for (const auto &e : pos_tfidf->transform(*pos_tags)) {
      fv.values[fv.layout[1].offset + e.index] = e.value;
    }
  }
  if (lex != nullptr) {
    fv.values[fv.layout[2].offset] = sentiment_compound(*lex, tokens);
  }
  const SurfaceStats s = surface_counts(text);
  const double counts[kSurfaceChannelSize] = {
      static_cast<double>(s.n_chars),    static_cast<double>(s.n_syllables),
      static_cast<double>(s.n_words),    static_cast<double>(s.n_hashtags),
      static_cast<double>(s.n_urls),     static_cast<double>(s.n_mentions),
      static_cast<double>(s.n_retweets)};
  std::copy(std::begin(counts), std::end(counts),
            fv.values.begin() + static_cast<std::ptrdiff_t>(fv.layout[3].offset));
  const TextStats stats = text_stats(text);
  if (stats.words > 0) {
    fv.values[fv.layout[4].offset] = flesch_reading_ease(stats);
    fv.values[fv.layout[4].offset + 1] = fk_grade_level(stats);
  }
  return fv;
}

PosTagMap load_pos_tags(const std::filesystem::path &path) {
  const std::string content = read_file(path);
  PosTagMap out;
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start < content.size()) {
    std::size_t nl = content.find('\n', start);
    if (nl == std::string::npos) nl = content.size();
    std::string_view line(content.data() + start, nl - start);
    start = nl + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw ParseError(path.string(), lineno, "expected post_id<TAB>tagged tokens");
    }
    TokenList tags;
    std::string_view rest = line.substr(tab + 1);
    std::size_t pos = 0;
    while (pos < rest.size()) {
      while (pos < rest.size() && rest[pos] == ' ') ++pos;
      std::size_t end = rest.find(' ', pos);
      if (end == std::string_view::npos) end = rest.size();
      if (end > pos) {
        const std::string_view item = rest.substr(pos, end - pos);
        const std::size_t slash = item.rfind('/');
        if (slash == std::string_view::npos || slash + 1 == item.size()) {
          throw ParseError(path.string(), lineno,
                           "expected token/TAG, got '" + std::string(item) + "'");
        }
        tags.emplace_back(item.substr(slash + 1));
      }
      pos = end;
    }
    out[std::string(line.substr(0, tab))] = std::move(tags);
  }
  return out;
}

AuxFeatureExtractor AuxFeatureExtractor::fit(std::span<const std::string> texts,
                                             std::span<const TokenList> pos_tags,
                                             std::optional<SentimentLexicon> lex,
                                             const AuxFeatureConfig &config) {
  std::vector<TokenList> docs;
  docs.reserve(texts.size());
  for (const auto &t : texts) docs.push_back(tokenize(t));
  AuxFeatureExtractor ex;
  ex.tfidf_ = TfIdfModel::fit(docs, config.word_range, NgramMode::kWord,
                              config.min_df);
  if (!pos_tags.empty()) {
    ex.pos_tfidf_ = TfIdfModel::fit(pos_tags, config.pos_range,
                                    NgramMode::kWord, config.min_df);
  }
  ex.lex_ = std::move(lex);
  return ex;
}

FeatureVector AuxFeatureExtractor::build(std::string_view text,
                                         const TokenList *pos_tags) const {
  const TokenList *tags = pos_tfidf_ ? pos_tags : nullptr;
  return build_aux_vector(text, tfidf_, lex_ ? &*lex_ : nullptr, tags,
                          pos_tfidf_ ? &*pos_tfidf_ : nullptr);
}

std::vector<Channel> AuxFeatureExtractor::layout() const {
  return aux_layout(tfidf_.size(), pos_tfidf_ ? pos_tfidf_->size() : 0);
}

std::size_t AuxFeatureExtractor::size() const {
  const auto l = layout();
  return l.back().offset + l.back().length;
}

nlohmann::json AuxFeatureExtractor::to_json() const {
  nlohmann::json j;
  j["tfidf"] = tfidf_.to_json();
  j["pos_tfidf"] = pos_tfidf_ ? pos_tfidf_->to_json() : nlohmann::json();
  if (lex_) {
    nlohmann::json scores = nlohmann::json::object();
    for (const auto &[w, s] : lex_->scores()) scores[w] = s;
    j["sentiment"] = scores;
  } else {
    j["sentiment"] = nullptr;
  }
  return j;
}

AuxFeatureExtractor AuxFeatureExtractor::from_json(const nlohmann::json &j) {
  AuxFeatureExtractor ex;
  ex.tfidf_ = TfIdfModel::from_json(j.at("tfidf"));
  if (!j.at("pos_tfidf").is_null()) {
    ex.pos_tfidf_ = TfIdfModel::from_json(j.at("pos_tfidf"));
  }
  if (!j.at("sentiment").is_null()) {
    ex.lex_ = SentimentLexicon(j.at("sentiment").get<std::map<std::string, int>>());
  }
  return ex;
}

}  // namespace offlang
