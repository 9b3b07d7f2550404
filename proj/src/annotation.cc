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

#include "offlang/annotation.h"

#include <sstream>

#include "offlang/errors.h"
#include "offlang/text.h"

namespace offlang {

namespace {

std::string json_error(std::string_view message) {
  return nlohmann::json{{"error", message}}.dump();
}

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (pos < path.size()) {
    const std::size_t slash = path.find('/', pos);
    const std::size_t end = slash == std::string_view::npos ? path.size() : slash;
    if (end > pos) parts.emplace_back(path.substr(pos, end - pos));
    pos = end + 1;
  }
  return parts;
}

nlohmann::json post_to_json(const Post &p) {
  return {{"id", p.id}, {"text", p.text}, {"source", to_string(p.source)}};
}

const std::string &require_param(const std::map<std::string, std::string> &q,
                                 const std::string &key) {
  const auto it = q.find(key);
  if (it == q.end() || it->second.empty()) {
    throw ValidationError("missing query parameter '" + key + "'");
  }
  return it->second;
}

}  // namespace

double jaccard_from_counts(std::size_t agreements, std::size_t common) {
  if (common == 0) throw InsufficientDataError("jaccard: no common items");
  if (agreements > common) throw ArgumentError("jaccard: more agreements than items");
  const double m = static_cast<double>(agreements);
  return m / (2.0 * static_cast<double>(common) - m);
}

std::string_view to_string(Resolver r) {
  switch (r) {
    case Resolver::kAnnotator1: return "annotator1";
    case Resolver::kAnnotator2: return "annotator2";
    case Resolver::kAgreementsOnly: return "agreements_only";
  }
  return "?";
}

std::optional<Resolver> parse_resolver(std::string_view s) {
  for (auto r : {Resolver::kAnnotator1, Resolver::kAnnotator2,
                 Resolver::kAgreementsOnly}) {
    if (s == to_string(r)) return r;
  }
  return std::nullopt;
}

AnnotationSession::AnnotationSession(std::string session_id,
                                     std::vector<Post> posts,
                                     std::array<std::string, 2> annotators,
                                     std::string guideline_version,
                                     std::optional<Lexicon> profanity)
    : session_id_(std::move(session_id)),
      posts_(std::move(posts)),
      annotators_(std::move(annotators)),
      guideline_version_(std::move(guideline_version)),
      profanity_(std::move(profanity)) {
  if (session_id_.empty()) throw ValidationError("session id must not be empty");
  if (posts_.empty()) throw ValidationError("session has no posts");
  if (annotators_[0].empty() || annotators_[1].empty() ||
      annotators_[0] == annotators_[1]) {
    throw ValidationError("a session needs two distinct, non-empty annotator ids");
  }
  for (std::size_t i = 0; i < posts_.size(); ++i) {
    if (!post_lookup_.emplace(posts_[i].id, i).second) {
      throw ValidationError("duplicate post id '" + posts_[i].id + "'");
    }
  }
  for (auto &r : records_) r.assign(posts_.size(), std::nullopt);
}

std::size_t AnnotationSession::annotator_index(std::string_view annotator) const {
  if (annotator == annotators_[0]) return 0;
  if (annotator == annotators_[1]) return 1;
  throw NotFoundError("unknown annotator '" + std::string(annotator) + "'");
}

std::size_t AnnotationSession::post_index(std::string_view post_id) const {
  const auto it = post_lookup_.find(post_id);
  if (it == post_lookup_.end()) {
    throw NotFoundError("unknown post '" + std::string(post_id) + "'");
  }
  return it->second;
}

nlohmann::json AnnotationSession::header_json() const {
  nlohmann::json posts = nlohmann::json::array();
  for (const auto &p : posts_) posts.push_back(post_to_json(p));
  return {{"type", "session"},
          {"session_id", session_id_},
          {"annotators", annotators_},
          {"guideline_version", guideline_version_},
          {"posts", posts}};
}

void AnnotationSession::attach_log(const std::filesystem::path &path) {
  std::unique_lock lock(mu_);
  const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  log_ = std::ofstream(path, std::ios::app | std::ios::binary);
  if (!log_) throw NotFoundError("cannot open session log " + path.string());
  if (fresh) {
    log_ << header_json().dump() << '\n';
    for (std::size_t who = 0; who < 2; ++who) {
      for (std::size_t i = 0; i < posts_.size(); ++i) {
        if (!records_[who][i]) continue;
        log_ << nlohmann::json{{"type", "label"},
                               {"annotator", annotators_[who]},
                               {"post_id", posts_[i].id},
                               {"label", label_to_json(*records_[who][i])}}
                    .dump()
             << '\n';
      }
    }
    log_.flush();
  }
}

void AnnotationSession::apply(std::size_t who, std::size_t post,
                              const HierLabel &label) {
  records_[who][post] = label;
}

SubmitResult AnnotationSession::submit(std::string_view annotator,
                                       std::string_view post_id,
                                       const HierLabel &label) {
  const std::size_t who = annotator_index(annotator);
  const std::size_t post = post_index(post_id);
  if (!label.valid()) {
    throw ValidationError("structurally invalid label for post '" +
                          std::string(post_id) + "'");
  }
  SubmitResult result;
  if (profanity_ && label.a == LabelA::kNot) {
    for (const auto &tok : tokenize(posts_[post].text)) {
      std::string_view t = tok;
      if (!t.empty() && (t.front() == '#' || t.front() == '@')) t.remove_prefix(1);
      if (profanity_->contains(t)) {
        result.warnings.push_back("post contains profanity '" + std::string(t) +
                                  "' but is labeled NOT; guidelines label "
                                  "profanity as offensive");
        break;
      }
    }
  }
  std::unique_lock lock(mu_);
  apply(who, post, label);
  if (log_.is_open()) {
    log_ << nlohmann::json{{"type", "label"},
                           {"annotator", annotators_[who]},
                           {"post_id", posts_[post].id},
                           {"label", label_to_json(label)}}
                .dump()
         << '\n';
    log_.flush();
  }
  return result;
}

std::optional<Post> AnnotationSession::next_unlabeled(std::string_view annotator) const {
  const std::size_t who = annotator_index(annotator);
  std::shared_lock lock(mu_);
  for (std::size_t i = 0; i < posts_.size(); ++i) {
    if (!records_[who][i]) return posts_[i];
  }
  return std::nullopt;
}

std::optional<HierLabel> AnnotationSession::label_of(std::string_view annotator,
                                                     std::string_view post_id) const {
  const std::size_t who = annotator_index(annotator);
  const std::size_t post = post_index(post_id);
  std::shared_lock lock(mu_);
  return records_[who][post];
}

std::size_t AnnotationSession::labeled_count(std::string_view annotator) const {
  const std::size_t who = annotator_index(annotator);
  std::shared_lock lock(mu_);
  std::size_t n = 0;
  for (const auto &r : records_[who]) n += r.has_value();
  return n;
}

AgreementReport AnnotationSession::agreement() const {
  std::shared_lock lock(mu_);
  std::size_t n[3] = {0, 0, 0};
  std::size_t m[3] = {0, 0, 0};
  for (std::size_t i = 0; i < posts_.size(); ++i) {
    const auto &x = records_[0][i];
    const auto &y = records_[1][i];
    if (!x || !y) continue;
    ++n[0];
    m[0] += x->a == y->a;
    if (x->b && y->b) {
      ++n[1];
      m[1] += *x->b == *y->b;
    }
    if (x->c && y->c) {
      ++n[2];
      m[2] += *x->c == *y->c;
    }
  }
  if (n[0] == 0) {
    throw InsufficientDataError("agreement: the annotators share no labeled posts");
  }
  AgreementReport r;
  r.n_common_a = n[0];
  r.n_common_b = n[1];
  r.n_common_c = n[2];
  r.jaccard_a = jaccard_from_counts(m[0], n[0]);
  if (n[1] > 0) r.jaccard_b = jaccard_from_counts(m[1], n[1]);
  if (n[2] > 0) r.jaccard_c = jaccard_from_counts(m[2], n[2]);
  return r;
}

std::vector<Disagreement> AnnotationSession::disagreements() const {
  std::shared_lock lock(mu_);
  std::vector<Disagreement> out;
  for (std::size_t i = 0; i < posts_.size(); ++i) {
    const auto &x = records_[0][i];
    const auto &y = records_[1][i];
    if (x && y && !(*x == *y)) out.push_back({posts_[i], *x, *y});
  }
  return out;
}

Dataset AnnotationSession::export_dataset(Resolver resolver) const {
  std::shared_lock lock(mu_);
  std::vector<LabeledPost> items;
  for (std::size_t i = 0; i < posts_.size(); ++i) {
    const auto &x = records_[0][i];
    const auto &y = records_[1][i];
    switch (resolver) {
      case Resolver::kAnnotator1:
        if (x) items.push_back({posts_[i], *x});
        break;
      case Resolver::kAnnotator2:
        if (y) items.push_back({posts_[i], *y});
        break;
      case Resolver::kAgreementsOnly:
        if (x && y && *x == *y) items.push_back({posts_[i], *x});
        break;
    }
  }
  if (items.empty()) {
    throw InsufficientDataError("export: no labeled posts under resolver " +
                                std::string(to_string(resolver)));
  }
  return Dataset(session_id_, std::move(items));
}

std::unique_ptr<AnnotationSession> AnnotationSession::replay(
    const std::filesystem::path &log, std::optional<Lexicon> profanity) {
  std::istringstream in(read_file(log));
  std::string line;
  std::size_t line_no = 0;
  std::unique_ptr<AnnotationSession> session;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error &e) {
      throw ParseError(log.string(), line_no, e.what());
    }
    const std::string type = j.value("type", "");
    try {
      if (type == "session") {
        if (session) throw ParseError(log.string(), line_no, "second session header");
        std::vector<Post> posts;
        for (const auto &p : j.at("posts")) {
          Post post{p.at("id").get<std::string>(), p.at("text").get<std::string>()};
          post.source = parse_source(p.value("source", "other"));
          posts.push_back(std::move(post));
        }
        session = std::make_unique<AnnotationSession>(
            j.at("session_id").get<std::string>(), std::move(posts),
            j.at("annotators").get<std::array<std::string, 2>>(),
            j.at("guideline_version").get<std::string>(), profanity);
      } else if (type == "label") {
        if (!session) throw ParseError(log.string(), line_no, "label before session header");
        const HierLabel label = label_from_json(j.at("label"));
        session->apply(session->annotator_index(j.at("annotator").get<std::string>()),
                       session->post_index(j.at("post_id").get<std::string>()), label);
      } else {
        throw ParseError(log.string(), line_no, "unknown record type '" + type + "'");
      }
    } catch (const nlohmann::json::exception &e) {
      throw ParseError(log.string(), line_no, e.what());
    }
  }
  if (!session) throw ParseError(log.string(), line_no, "log has no session header");
  session->attach_log(log);
  return session;
}

nlohmann::json label_to_json(const HierLabel &label) {
  nlohmann::json j = {{"a", to_string(label.a)}, {"b", nullptr}, {"c", nullptr}};
  if (label.b) j["b"] = to_string(*label.b);
  if (label.c) j["c"] = to_string(*label.c);
  return j;
}

HierLabel label_from_json(const nlohmann::json &j) {
  if (!j.is_object()) throw ValidationError("label must be an object");
  const auto field = [&](const char *key) -> std::optional<std::string> {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    if (!j.at(key).is_string()) {
      throw ValidationError(std::string("label field '") + key + "' must be a string");
    }
    const std::string v = j.at(key).get<std::string>();
    if (v.empty() || v == "NULL") return std::nullopt;
    return v;
  };
  const auto a = field("a");
  if (!a) throw ValidationError("label field 'a' is required");
  const auto la = parse_label_a(*a);
  if (!la) throw ValidationError("unknown sub-task A label '" + *a + "'");
  std::optional<LabelB> lb;
  std::optional<LabelC> lc;
  if (const auto b = field("b")) {
    lb = parse_label_b(*b);
    if (!lb) throw ValidationError("unknown sub-task B label '" + *b + "'");
  }
  if (const auto c = field("c")) {
    lc = parse_label_c(*c);
    if (!lc) throw ValidationError("unknown sub-task C label '" + *c + "'");
  }
  return HierLabel::make(*la, lb, lc);
}

nlohmann::json agreement_to_json(const AgreementReport &r) {
  nlohmann::json j = {{"jaccard_a", r.jaccard_a},
                      {"jaccard_b", nullptr},
                      {"jaccard_c", nullptr},
                      {"n_common", {{"a", r.n_common_a}, {"b", r.n_common_b}, {"c", r.n_common_c}}}};
  if (r.jaccard_b) j["jaccard_b"] = *r.jaccard_b;
  if (r.jaccard_c) j["jaccard_c"] = *r.jaccard_c;
  return j;
}

void AnnotationService::add_session(std::unique_ptr<AnnotationSession> session) {
  std::unique_lock lock(mu_);
  const std::string id = session->session_id();
  if (!sessions_.emplace(id, std::move(session)).second) {
    throw ValidationError("session '" + id + "' already exists");
  }
}

AnnotationSession *AnnotationService::find(std::string_view id) const {
  std::shared_lock lock(mu_);
  const auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second.get();
}

ServiceResponse AnnotationService::handle(
    std::string_view method, std::string_view path,
    const std::map<std::string, std::string> &query,
    std::string_view body) const {
  const auto parts = split_path(path);
  if (parts.size() < 2 || parts[0] != "session") {
    return {404, "application/json", json_error("no such endpoint")};
  }
  AnnotationSession *session = find(parts[1]);
  if (session == nullptr) {
    return {404, "application/json", json_error("unknown session '" + parts[1] + "'")};
  }
  const std::string action = parts.size() >= 3 ? parts[2] : "";
  if (parts.size() > 3) return {404, "application/json", json_error("no such endpoint")};
  const bool get = method == "GET";
  const bool post = method == "POST";
  try {
    if (action.empty() && get) {
      nlohmann::json progress;
      for (const auto &a : session->annotators()) progress[a] = session->labeled_count(a);
      return {200, "application/json",
              nlohmann::json{{"session_id", session->session_id()},
                             {"annotators", session->annotators()},
                             {"guideline_version", session->guideline_version()},
                             {"n_posts", session->posts().size()},
                             {"labeled", progress}}
                  .dump()};
    }
    if (action == "next" && get) {
      const auto next = session->next_unlabeled(require_param(query, "annotator"));
      nlohmann::json j = {{"post", nullptr}, {"done", !next.has_value()}};
      if (next) j["post"] = post_to_json(*next);
      return {200, "application/json", j.dump()};
    }
    if (action == "label" && post) {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(body);
      } catch (const nlohmann::json::parse_error &e) {
        throw ValidationError(std::string("malformed JSON body: ") + e.what());
      }
      if (!j.is_object() || !j.contains("annotator") || !j.contains("post_id") ||
          !j.contains("label") || !j.at("annotator").is_string() ||
          !j.at("post_id").is_string()) {
        throw ValidationError("body needs string 'annotator', 'post_id' and a 'label' object");
      }
      const HierLabel label = label_from_json(j.at("label"));
      const auto result = session->submit(j.at("annotator").get<std::string>(),
                                          j.at("post_id").get<std::string>(), label);
      return {200, "application/json",
              nlohmann::json{{"stored", true},
                             {"post_id", j.at("post_id")},
                             {"label", label_to_json(label)},
                             {"warnings", result.warnings}}
                  .dump()};
    }
    if (action == "agreement" && get) {
      return {200, "application/json", agreement_to_json(session->agreement()).dump()};
    }
    if (action == "disagreements" && get) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto &d : session->disagreements()) {
        arr.push_back({{"post", post_to_json(d.post)},
                       {"labels", {{session->annotators()[0], label_to_json(d.first)},
                                   {session->annotators()[1], label_to_json(d.second)}}}});
      }
      return {200, "application/json", nlohmann::json{{"disagreements", arr}}.dump()};
    }
    if (action == "export" && get) {
      const std::string &name = require_param(query, "resolver");
      const auto resolver = parse_resolver(name);
      if (!resolver) throw ValidationError("unknown resolver '" + name + "'");
      const auto fmt_it = query.find("format");
      const std::string format = fmt_it == query.end() ? "json" : fmt_it->second;
      const Dataset d = session->export_dataset(*resolver);
      if (format == "tsv") {
        return {200, "text/tab-separated-values", format_olid_tsv(d)};
      }
      if (format != "json") throw ValidationError("unknown format '" + format + "'");
      nlohmann::json arr = nlohmann::json::array();
      for (const auto &item : d.items()) {
        arr.push_back({{"post", post_to_json(item.post)}, {"label", label_to_json(item.label)}});
      }
      return {200, "application/json",
              nlohmann::json{{"resolver", name}, {"items", arr}}.dump()};
    }
  } catch (const NotFoundError &e) {
    return {404, "application/json", json_error(e.what())};
  } catch (const InsufficientDataError &e) {
    return {409, "application/json", json_error(e.what())};
  } catch (const Error &e) {
    if (e.category() == Error::Category::kRuntime) {
      return {500, "application/json", json_error(e.what())};
    }
    return {400, "application/json", json_error(e.what())};
  }
  return {action.empty() || action == "next" || action == "label" ||
                  action == "agreement" || action == "disagreements" ||
                  action == "export"
              ? 405
              : 404,
          "application/json", json_error("no such endpoint")};
}

}  // namespace offlang
