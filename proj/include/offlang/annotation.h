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

#ifndef OFFLANG_ANNOTATION_H_
#define OFFLANG_ANNOTATION_H_

#include <array>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "offlang/corpus.h"
#include "offlang/labels.h"

namespace offlang {

struct AgreementReport {
  double jaccard_a = 0.0;
  std::optional<double> jaccard_b;  // absent when no post is applicable
  std::optional<double> jaccard_c;
  std::size_t n_common_a = 0;
  std::size_t n_common_b = 0;
  std::size_t n_common_c = 0;
};

// Set Jaccard of two (item, label) assignment sets over n shared items with
// m agreements: m / (2n - m).
double jaccard_from_counts(std::size_t agreements, std::size_t common);

struct SubmitResult {
  std::vector<std::string> warnings;
};

enum class Resolver { kAnnotator1, kAnnotator2, kAgreementsOnly };

std::string_view to_string(Resolver r);
std::optional<Resolver> parse_resolver(std::string_view s);

struct Disagreement {
  Post post;
  HierLabel first;
  HierLabel second;
};

// Two-annotator labeling session. Submissions are last-write-wins per
// (annotator, post); readers see consistent snapshots. When a log path is
// set, every accepted submission is appended to it as a JSON line.
class AnnotationSession {
 public:
  AnnotationSession(std::string session_id, std::vector<Post> posts,
                    std::array<std::string, 2> annotators,
                    std::string guideline_version = "1",
                    std::optional<Lexicon> profanity = std::nullopt);

  AnnotationSession(const AnnotationSession &) = delete;
  AnnotationSession &operator=(const AnnotationSession &) = delete;

  const std::string &session_id() const { return session_id_; }
  const std::vector<Post> &posts() const { return posts_; }
  const std::array<std::string, 2> &annotators() const { return annotators_; }
  const std::string &guideline_version() const { return guideline_version_; }

  // Starts an append-only log; writes the session header when the file is
  // new or empty.
  void attach_log(const std::filesystem::path &path);

  SubmitResult submit(std::string_view annotator, std::string_view post_id,
                      const HierLabel &label);

  std::optional<Post> next_unlabeled(std::string_view annotator) const;
  std::optional<HierLabel> label_of(std::string_view annotator,
                                    std::string_view post_id) const;
  std::size_t labeled_count(std::string_view annotator) const;

  AgreementReport agreement() const;
  std::vector<Disagreement> disagreements() const;
  Dataset export_dataset(Resolver resolver) const;

  // Rebuilds a session from its log. The log stays attached so further
  // submissions keep appending.
  static std::unique_ptr<AnnotationSession> replay(
      const std::filesystem::path &log,
      std::optional<Lexicon> profanity = std::nullopt);

 private:
  std::size_t annotator_index(std::string_view annotator) const;
  std::size_t post_index(std::string_view post_id) const;
  nlohmann::json header_json() const;
  void apply(std::size_t who, std::size_t post, const HierLabel &label);

  std::string session_id_;
  std::vector<Post> posts_;
  std::map<std::string, std::size_t, std::less<>> post_lookup_;
  std::array<std::string, 2> annotators_;
  std::string guideline_version_;
  std::optional<Lexicon> profanity_;

  mutable std::shared_mutex mu_;
  std::array<std::vector<std::optional<HierLabel>>, 2> records_;
  std::ofstream log_;
};

nlohmann::json label_to_json(const HierLabel &label);
// Throws ValidationError for unknown codes or invalid combinations.
HierLabel label_from_json(const nlohmann::json &j);
nlohmann::json agreement_to_json(const AgreementReport &r);

struct ServiceResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

// Transport-independent router for the annotation endpoints:
//   GET  /session/:id
//   GET  /session/:id/next?annotator=
//   POST /session/:id/label      {"annotator", "post_id", "label": {a, b, c}}
//   GET  /session/:id/agreement
//   GET  /session/:id/disagreements
//   GET  /session/:id/export?resolver=&format=json|tsv
// Errors map to 400 (validation), 404 (unknown session/post/annotator) and
// 409 (insufficient data).
class AnnotationService {
 public:
  void add_session(std::unique_ptr<AnnotationSession> session);
  AnnotationSession *find(std::string_view id) const;

  ServiceResponse handle(std::string_view method, std::string_view path,
                         const std::map<std::string, std::string> &query,
                         std::string_view body) const;

 private:
  mutable std::shared_mutex mu_;
  std::map<std::string, std::unique_ptr<AnnotationSession>, std::less<>> sessions_;
};

}  // namespace offlang

#endif  // OFFLANG_ANNOTATION_H_
