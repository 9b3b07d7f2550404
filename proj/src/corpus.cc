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

#include "offlang/corpus.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "offlang/errors.h"
#include "offlang/random.h"
#include "offlang/text.h"

namespace offlang {
namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

// Splits on LF, dropping a trailing CR from each line.
std::vector<std::string_view> split_lines(std::string_view content) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start < content.size()) {
    std::size_t nl = content.find('\n', start);
    if (nl == std::string_view::npos) nl = content.size();
    std::string_view line = content.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back(line);
    start = nl + 1;
  }
  return out;
}

struct Header {
  std::size_t columns = 0;
  bool has_labels = false;
  bool has_source = false;
};

Header parse_header(std::string_view line, const std::string &name,
                    bool require_labels) {
  auto cols = split_tabs(line);
  Header h;
  h.columns = cols.size();
  if (cols.size() < 2 || cols[0] != "id" || cols[1] != "tweet") {
    throw ParseError(name, 1, "expected header starting with id<TAB>tweet");
  }
  if (cols.size() >= 5 && cols[2] == "subtask_a" && cols[3] == "subtask_b" &&
      cols[4] == "subtask_c") {
    h.has_labels = true;
    h.has_source = cols.size() >= 6 && cols[5] == "source";
    if (cols.size() > 6 || (cols.size() == 6 && !h.has_source)) {
      throw ParseError(name, 1, "unexpected header columns");
    }
  } else if (require_labels) {
    throw ParseError(name, 1,
                     "expected header id<TAB>tweet<TAB>subtask_a<TAB>"
                     "subtask_b<TAB>subtask_c");
  } else if (cols.size() == 3 && cols[2] == "source") {
    h.has_source = true;
  }
  return h;
}


}  // namespace

std::string_view to_string(Source s) {
  switch (s) {
    case Source::kFacebook: return "facebook";
    case Source::kReddit: return "reddit";
    case Source::kTwitter: return "twitter";
    case Source::kOther: return "other";
  }
  return "other";
}

Source parse_source(std::string_view s) {
  const std::string lower = to_lower(s);
  if (lower == "facebook") return Source::kFacebook;
  if (lower == "reddit") return Source::kReddit;
  if (lower == "twitter") return Source::kTwitter;
  return Source::kOther;
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

Dataset::Dataset(std::string name, std::vector<LabeledPost> items)
    : name_(std::move(name)), items_(std::move(items)) {
  std::unordered_set<std::string_view> seen;
  for (const auto &item : items_) {
    if (!item.label.valid()) {
      throw ValidationError("post " + item.post.id +
                            ": invalid label hierarchy " +
                            item.label.pattern());
    }
    if (trim(item.post.text).empty()) {
      throw ValidationError("post " + item.post.id + ": empty text");
    }
    if (!seen.insert(item.post.id).second) {
      throw ValidationError("duplicate post id " + item.post.id);
    }
  }
}

std::vector<Post> Dataset::posts() const {
  std::vector<Post> out;
  out.reserve(items_.size());
  for (const auto &item : items_) out.push_back(item.post);
  return out;
}

Dataset Dataset::restrict_to(Task task) const {
  std::vector<LabeledPost> kept;
  for (const auto &item : items_) {
    if (task_class(item.label, task)) kept.push_back(item);
  }
  return Dataset(name_ + "/" + std::string(to_string(task)), std::move(kept));
}

std::vector<int> Dataset::task_labels(Task task) const {
  std::vector<int> out;
  out.reserve(items_.size());
  for (const auto &item : items_) {
    const auto cls = task_class(item.label, task);
    if (!cls) {
      throw ArgumentError("post " + item.post.id + " has no label for task " +
                          std::string(to_string(task)));
    }
    out.push_back(*cls);
  }
  return out;
}

std::uint64_t Dataset::checksum() const {
  std::uint64_t h = fnv1a("");
  for (const auto &item : items_) {
    h = fnv1a(item.post.id, h);
    h = fnv1a("\t", h);
    h = fnv1a(item.post.text, h);
    h = fnv1a("\t", h);
    h = fnv1a(item.label.pattern(), h);
    h = fnv1a("\n", h);
  }
  return h;
}

std::size_t LabelDistribution::count(const std::string &pattern) const {
  const auto it = counts.find(pattern);
  return it == counts.end() ? 0 : it->second;
}

LabelDistribution distribution(const Dataset &d) {
  LabelDistribution out;
  for (const auto &item : d.items()) ++out.counts[item.label.pattern()];
  out.total = d.size();
  return out;
}

LabelDistribution operator+(const LabelDistribution &x,
                            const LabelDistribution &y) {
  LabelDistribution out = x;
  for (const auto &[pattern, n] : y.counts) out.counts[pattern] += n;
  out.total += y.total;
  return out;
}

Lexicon::Lexicon(const std::vector<std::string> &terms) {
  for (const auto &t : terms) {
    const std::string term = to_lower(trim(t));
    if (!term.empty()) terms_.insert(term);
  }
  if (terms_.empty()) throw ValidationError("lexicon is empty");
}

bool Lexicon::contains(std::string_view token) const {
  return terms_.find(token) != terms_.end();
}

std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path &path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Error::Category::kRuntime, "cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(Error::Category::kRuntime, "write failed: " + path.string());
}

Dataset parse_olid_tsv(std::string_view content, const std::string &name) {
  const auto lines = split_lines(content);
  if (lines.empty()) throw ParseError(name, 1, "missing header");
  const Header header = parse_header(lines[0], name, /*require_labels=*/true);

  std::vector<LabeledPost> items;
  std::vector<std::string> invalid;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string_view line = lines[i];
    if (line.empty()) continue;
    const std::size_t lineno = i + 1;
    const auto cols = split_tabs(line);
    if (cols.size() != header.columns) {
      throw ParseError(name, lineno,
                       "expected " + std::to_string(header.columns) +
                           " columns, got " + std::to_string(cols.size()));
    }
    Post post{std::string(cols[0]), std::string(cols[1]), Source::kOther};
    if (header.has_source) post.source = parse_source(cols[5]);

    const auto a = parse_label_a(cols[2]);
    if (!a) throw ParseError(name, lineno, "bad subtask_a value '" + std::string(cols[2]) + "'");
    std::optional<LabelB> b;
    std::optional<LabelC> c;
    if (cols[3] != "NULL") {
      b = parse_label_b(cols[3]);
      if (!b) throw ParseError(name, lineno, "bad subtask_b value '" + std::string(cols[3]) + "'");
    }
    if (cols[4] != "NULL") {
      c = parse_label_c(cols[4]);
      if (!c) throw ParseError(name, lineno, "bad subtask_c value '" + std::string(cols[4]) + "'");
    }
    HierLabel label{*a, b, c};
    if (!label.valid()) invalid.push_back(post.id);
    items.push_back({std::move(post), label});
  }
  if (!invalid.empty()) {
    std::string ids;
    for (const auto &id : invalid) ids += (ids.empty() ? "" : ", ") + id;
    throw ValidationError(name + ": invalid label hierarchy for post(s) " + ids);
  }
  return Dataset(name, std::move(items));
}

Dataset load_olid_tsv(const std::filesystem::path &path) {
  return parse_olid_tsv(read_file(path), path.string());
}

std::string format_olid_tsv(const Dataset &d) {
  const bool with_source =
      std::any_of(d.items().begin(), d.items().end(), [](const auto &item) {
        return item.post.source != Source::kOther;
      });
  std::string out = "id\ttweet\tsubtask_a\tsubtask_b\tsubtask_c";
  out += with_source ? "\tsource\n" : "\n";
  for (const auto &item : d.items()) {
    if (item.post.text.find_first_of("\t\n\r") != std::string::npos ||
        item.post.id.find_first_of("\t\n\r") != std::string::npos) {
      throw ValidationError("post " + item.post.id +
                            " contains a tab or newline; not representable "
                            "in TSV");
    }
    out += item.post.id;
    out += '\t';
    out += item.post.text;
    out += '\t';
    out += to_string(item.label.a);
    out += '\t';
    out += item.label.b ? to_string(*item.label.b) : "NULL";
    out += '\t';
    out += item.label.c ? to_string(*item.label.c) : "NULL";
    if (with_source) {
      out += '\t';
      out += to_string(item.post.source);
    }
    out += '\n';
  }
  return out;
}

void write_olid_tsv(const Dataset &d, const std::filesystem::path &path) {
  write_file(path, format_olid_tsv(d));
}

std::string format_posts_tsv(std::span<const Post> posts) {
  std::string out = "id\ttweet\n";
  for (const auto &p : posts) {
    if (p.text.find_first_of("\t\n\r") != std::string::npos ||
        p.id.find_first_of("\t\n\r") != std::string::npos) {
      throw ValidationError("post " + p.id +
                            " contains a tab or newline; not representable "
                            "in TSV");
    }
    out += p.id;
    out += '\t';
    out += p.text;
    out += '\n';
  }
  return out;
}

std::vector<Post> load_posts_tsv(const std::filesystem::path &path) {
  const std::string content = read_file(path);
  const std::string name = path.string();
  const auto lines = split_lines(content);
  if (lines.empty()) throw ParseError(name, 1, "missing header");
  const Header header = parse_header(lines[0], name, /*require_labels=*/false);
  std::vector<Post> out;
  std::unordered_set<std::string> seen;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto cols = split_tabs(lines[i]);
    if (cols.size() != header.columns) {
      throw ParseError(name, i + 1,
                       "expected " + std::to_string(header.columns) +
                           " columns, got " + std::to_string(cols.size()));
    }
    Post post{std::string(cols[0]), std::string(cols[1]), Source::kOther};
    if (header.has_source) post.source = parse_source(cols.back());
    if (trim(post.text).empty()) {
      throw ValidationError("post " + post.id + ": empty text");
    }
    if (!seen.insert(post.id).second) {
      throw ValidationError("duplicate post id " + post.id);
    }
    out.push_back(std::move(post));
  }
  return out;
}

Lexicon load_lexicon(const std::filesystem::path &path) {
  std::vector<std::string> terms;
  for (auto line : split_lines(read_file(path))) {
    line = trim(line);
    if (!line.empty()) terms.emplace_back(line);
  }
  return Lexicon(terms);
}

std::pair<Dataset, Dataset> stratified_split(const Dataset &d,
                                             double train_fraction,
                                             std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ArgumentError("train fraction must lie in (0, 1), got " +
                        std::to_string(train_fraction));
  }
  std::map<std::string, std::vector<std::size_t>> by_pattern;
  for (std::size_t i = 0; i < d.size(); ++i) {
    by_pattern[d[i].label.pattern()].push_back(i);
  }
  Rng rng(seed);
  std::vector<bool> in_train(d.size(), false);
  for (auto &[pattern, indices] : by_pattern) {
    const auto n_train = static_cast<std::size_t>(
        std::llround(train_fraction * static_cast<double>(indices.size())));
    rng.shuffle(std::span<std::size_t>(indices));
    for (std::size_t k = 0; k < n_train && k < indices.size(); ++k) {
      in_train[indices[k]] = true;
    }
  }
  std::vector<LabeledPost> train;
  std::vector<LabeledPost> test;
  for (std::size_t i = 0; i < d.size(); ++i) {
    (in_train[i] ? train : test).push_back(d[i]);
  }
  return {Dataset(d.name() + "-train", std::move(train)),
          Dataset(d.name() + "-test", std::move(test))};
}

std::string anonymize(std::string_view text,
                      const std::vector<std::string> &names) {
  std::vector<TokenList> name_tokens;
  for (const auto &name : names) {
    TokenList toks = tokenize(name);
    if (!toks.empty()) name_tokens.push_back(std::move(toks));
  }
  // Longest names first so "Anders Fogh" wins over "Anders".
  std::stable_sort(name_tokens.begin(), name_tokens.end(),
                   [](const auto &x, const auto &y) { return x.size() > y.size(); });

  const auto spans = tokenize_spans(text);
  std::string out;
  std::size_t copied = 0;
  std::size_t i = 0;
  while (i < spans.size()) {
    std::size_t matched = 0;
    for (const auto &name : name_tokens) {
      if (i + name.size() > spans.size()) continue;
      bool ok = true;
      for (std::size_t k = 0; k < name.size() && ok; ++k) {
        ok = spans[i + k].text == name[k];
      }
      if (ok) {
        matched = name.size();
        break;
      }
    }
    if (matched == 0) {
      ++i;
      continue;
    }
    out.append(text.substr(copied, spans[i].begin - copied));
    out += "@USER";
    copied = spans[i + matched - 1].end;
    i += matched;
  }
  out.append(text.substr(copied));
  return out;
}

std::vector<Post> lexicon_filter(std::span<const Post> posts,
                                 const Lexicon &lex) {
  std::vector<Post> out;
  for (const auto &post : posts) {
    const auto tokens = tokenize(post.text);
    if (std::any_of(tokens.begin(), tokens.end(),
                    [&](const std::string &t) { return lex.contains(t); })) {
      out.push_back(post);
    }
  }
  return out;
}

}  // namespace offlang
