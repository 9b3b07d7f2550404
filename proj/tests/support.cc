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

#include "support.h"

#include "offlang/random.h"
#include "offlang/text.h"

namespace offlang::testing {

namespace {

const std::vector<std::string> kNeutral = {
    "the",     "weather", "is",     "nice",    "today",   "we",     "went",
    "to",      "city",    "park",   "and",     "saw",     "a",      "dog",
    "football", "match",  "was",    "good",    "news",    "about",  "new",
    "train",   "station", "coffee", "morning", "people",  "read",   "book",
    "film",    "evening", "music",  "played",  "friends", "dinner", "house",
    "street",  "school",  "summer", "winter",  "holiday", "beach",  "bike",
    "ride",    "long",    "short",  "happy",   "quiet",   "market", "bread",
    "cheese",  "vote",    "party",  "debate",  "sunday",  "monday", "work",
    "office",  "team",    "player", "goal",    "season",  "fans",   "game",
    "tomorrow"};

const std::vector<std::string> kProfanity = {
    "idiot", "lort", "pis", "fanden", "crap", "moron",
    "dumbass", "loser", "jerk", "bastard", "helvede", "shitty"};

HierLabel random_offensive(Rng &rng) {
  switch (rng.index(4)) {
    case 0: return HierLabel::untargeted();
    case 1: return HierLabel::targeted(LabelC::kInd);
    case 2: return HierLabel::targeted(LabelC::kGrp);
    default: return HierLabel::targeted(LabelC::kOth);
  }
}

}  // namespace

KeywordCorpus keyword_corpus(std::size_t n, std::uint64_t seed,
                             double offensive_rate) {
  Rng rng(seed);
  std::vector<LabeledPost> items;
  items.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t len = 4 + rng.index(10);
    std::vector<std::string> words;
    for (std::size_t k = 0; k < len; ++k) words.push_back(kNeutral[rng.index(kNeutral.size())]);
    HierLabel label;
    if (rng.uniform01() < offensive_rate) {
      const std::size_t pos = rng.index(words.size() + 1);
      words.insert(words.begin() + static_cast<std::ptrdiff_t>(pos),
                   kProfanity[rng.index(kProfanity.size())]);
      label = random_offensive(rng);
    }
    std::string text;
    for (const auto &w : words) {
      if (!text.empty()) text += ' ';
      text += w;
    }
    items.push_back({Post{"s" + std::to_string(i), text}, label});
  }
  return {Dataset("keyword-" + std::to_string(seed), std::move(items)),
          kProfanity, kNeutral};
}

Dataset from_counts(const std::vector<std::pair<HierLabel, std::size_t>> &counts,
                    const std::string &name) {
  std::vector<LabeledPost> items;
  std::size_t id = 0;
  for (const auto &[label, n] : counts) {
    for (std::size_t i = 0; i < n; ++i, ++id) {
      items.push_back({Post{name + "-" + std::to_string(id),
                            "post number " + std::to_string(id)},
                       label});
    }
  }
  return Dataset(name, std::move(items));
}

Dataset danish_train_distribution() {
  return from_counts({{HierLabel::targeted(LabelC::kInd), 77},
                      {HierLabel::targeted(LabelC::kOth), 30},
                      {HierLabel::targeted(LabelC::kGrp), 98},
                      {HierLabel::untargeted(), 147},
                      {HierLabel::not_offensive(), 2527}},
                     "da-train");
}

Dataset danish_test_distribution() {
  return from_counts({{HierLabel::targeted(LabelC::kInd), 18},
                      {HierLabel::targeted(LabelC::kOth), 6},
                      {HierLabel::targeted(LabelC::kGrp), 23},
                      {HierLabel::untargeted(), 42},
                      {HierLabel::not_offensive(), 632}},
                     "da-test");
}

EmbeddingMatrix frozen_embedding(const Dataset &data, std::size_t dim,
                                 std::uint64_t seed) {
  std::vector<TokenList> docs;
  for (const auto &item : data.items()) docs.push_back(tokenize(item.post.text));
  const EmbeddingMatrix random = init_random(build_vocab(docs, 1), dim, seed);
  std::vector<double> w = random.weights();
  // Give UNK a non-zero vector, as a pretrained file would.
  for (std::size_t k = 0; k < dim; ++k) w[EmbeddingMatrix::kUnk * dim + k] = 0.01;
  return EmbeddingMatrix(random.tokens(), dim, std::move(w), false);
}

std::filesystem::path temp_dir(const std::string &name) {
  const auto dir = std::filesystem::temp_directory_path() / ("offlang-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace offlang::testing
