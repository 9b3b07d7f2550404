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

#include <gtest/gtest.h>

#include <thread>

#include "httplib.h"
#include "offlang/annotation_server.h"
#include "offlang/errors.h"
#include "offlang/random.h"
#include "offlang/text.h"
#include "support.h"

namespace offlang {
namespace {

HierLabel pat(const std::string &p) { return parse_pattern(p).value(); }

std::vector<Post> make_posts(std::size_t n) {
  std::vector<Post> posts;
  for (std::size_t i = 0; i < n; ++i) {
    posts.push_back({"p" + std::to_string(i), "post number " + std::to_string(i), Source::kOther});
  }
  return posts;
}

std::unique_ptr<AnnotationSession> make_session(std::size_t n, const std::string &id = "s1") {
  return std::make_unique<AnnotationSession>(id, make_posts(n),
                                             std::array<std::string, 2>{"ann1", "ann2"});
}

TEST(JaccardTest, Counts) {
  EXPECT_EQ(jaccard_from_counts(10, 10), 1.0);
  EXPECT_NEAR(jaccard_from_counts(60, 100), 0.4286, 5e-5);
  EXPECT_EQ(jaccard_from_counts(0, 7), 0.0);
  EXPECT_THROW(jaccard_from_counts(0, 0), InsufficientDataError);
}

TEST(SessionTest, SubmitAndProgress) {
  auto s = make_session(3);
  EXPECT_EQ(s->next_unlabeled("ann1")->id, "p0");
  EXPECT_TRUE(s->submit("ann1", "p0", pat("OFF-TIN-IND")).warnings.empty());
  EXPECT_EQ(s->next_unlabeled("ann1")->id, "p1");
  EXPECT_EQ(s->next_unlabeled("ann2")->id, "p0");
  EXPECT_EQ(s->label_of("ann1", "p0"), pat("OFF-TIN-IND"));
  EXPECT_FALSE(s->label_of("ann2", "p0").has_value());
  s->submit("ann1", "p0", pat("NOT"));
  EXPECT_EQ(s->label_of("ann1", "p0"), pat("NOT"));
  EXPECT_EQ(s->labeled_count("ann1"), 1u);
  EXPECT_THROW(s->submit("ann3", "p0", pat("NOT")), NotFoundError);
  EXPECT_THROW(s->submit("ann1", "p9", pat("NOT")), NotFoundError);
  const HierLabel broken{LabelA::kNot, LabelB::kTin, std::nullopt};
  EXPECT_THROW(s->submit("ann1", "p1", broken), ValidationError);
}

TEST(SessionTest, ProfanityWarningOnNotLabel) {
  AnnotationSession s("w", {{"p0", "what a #lort day", Source::kOther}},
                      {"ann1", "ann2"}, "1", Lexicon({"lort"}));
  EXPECT_EQ(s.submit("ann1", "p0", pat("NOT")).warnings.size(), 1u);
  EXPECT_TRUE(s.submit("ann1", "p0", pat("OFF-UNT")).warnings.empty());
  EXPECT_EQ(s.label_of("ann1", "p0"), pat("OFF-UNT"));
}

TEST(AgreementTest, IdenticalAndPartialAgreement) {
  auto s = make_session(100);
  EXPECT_THROW(s->agreement(), InsufficientDataError);
  for (int i = 0; i < 100; ++i) {
    const std::string id = "p" + std::to_string(i);
    s->submit("ann1", id, pat("NOT"));
    s->submit("ann2", id, i < 60 ? pat("NOT") : pat("OFF-UNT"));
  }
  const AgreementReport r = s->agreement();
  EXPECT_NEAR(r.jaccard_a, 0.4286, 5e-5);
  EXPECT_EQ(r.n_common_a, 100u);
  EXPECT_FALSE(r.jaccard_b.has_value());
  EXPECT_EQ(s->disagreements().size(), 40u);

  auto same = make_session(5);
  for (int i = 0; i < 5; ++i) {
    same->submit("ann1", "p" + std::to_string(i), pat("OFF-TIN-GRP"));
    same->submit("ann2", "p" + std::to_string(i), pat("OFF-TIN-GRP"));
  }
  const AgreementReport all = same->agreement();
  EXPECT_EQ(all.jaccard_a, 1.0);
  EXPECT_EQ(all.jaccard_b, 1.0);
  EXPECT_EQ(all.jaccard_c, 1.0);
}

TEST(AgreementTest, SubtaskRestrictionAndZero) {
  auto s = make_session(4);
  s->submit("ann1", "p0", pat("OFF-TIN-IND"));
  s->submit("ann2", "p0", pat("OFF-TIN-GRP"));
  s->submit("ann1", "p1", pat("OFF-UNT"));
  s->submit("ann2", "p1", pat("NOT"));
  s->submit("ann1", "p2", pat("OFF-UNT"));
  const AgreementReport r = s->agreement();
  EXPECT_EQ(r.n_common_a, 2u);
  EXPECT_NEAR(r.jaccard_a, 1.0 / 3.0, 1e-12);
  EXPECT_EQ(r.n_common_b, 1u);
  EXPECT_EQ(r.jaccard_b, 1.0);
  EXPECT_EQ(r.n_common_c, 1u);
  EXPECT_EQ(r.jaccard_c, 0.0);
  const auto j = agreement_to_json(r);
  EXPECT_EQ(j["n_common"]["a"], 2);
}

// Property: agreement is symmetric in the two annotators.
TEST(AgreementProperty, Symmetric) {
  Rng rng(14);
  const std::vector<std::string> patterns = {"NOT", "OFF-UNT", "OFF-TIN-IND", "OFF-TIN-GRP",
                                             "OFF-TIN-OTH"};
  for (int trial = 0; trial < 50; ++trial) {
    auto s = make_session(20);
    auto swapped = std::make_unique<AnnotationSession>(
        "t", make_posts(20), std::array<std::string, 2>{"ann2", "ann1"});
    for (int i = 0; i < 20; ++i) {
      const std::string id = "p" + std::to_string(i);
      const HierLabel x = pat(patterns[rng.index(5)]);
      const HierLabel y = pat(patterns[rng.index(5)]);
      if (i == 0 || rng.bernoulli(0.8)) {
        s->submit("ann1", id, x);
        swapped->submit("ann1", id, x);
      }
      if (i == 0 || rng.bernoulli(0.8)) {
        s->submit("ann2", id, y);
        swapped->submit("ann2", id, y);
      }
    }
    const AgreementReport a = s->agreement();
    const AgreementReport b = swapped->agreement();
    EXPECT_EQ(a.jaccard_a, b.jaccard_a);
    EXPECT_EQ(a.jaccard_b, b.jaccard_b);
    EXPECT_EQ(a.jaccard_c, b.jaccard_c);
    EXPECT_GE(a.jaccard_a, 0.0);
    EXPECT_LE(a.jaccard_a, 1.0);
  }
}

TEST(ExportTest, Resolvers) {
  auto s = make_session(4);
  EXPECT_THROW(s->export_dataset(Resolver::kAnnotator1), InsufficientDataError);
  s->submit("ann1", "p0", pat("NOT"));
  s->submit("ann2", "p0", pat("NOT"));
  s->submit("ann1", "p1", pat("OFF-UNT"));
  s->submit("ann2", "p1", pat("NOT"));
  s->submit("ann2", "p2", pat("OFF-TIN-OTH"));
  EXPECT_EQ(s->export_dataset(Resolver::kAnnotator1).size(), 2u);
  EXPECT_EQ(s->export_dataset(Resolver::kAnnotator2).size(), 3u);
  const Dataset agreed = s->export_dataset(Resolver::kAgreementsOnly);
  ASSERT_EQ(agreed.size(), 1u);
  EXPECT_EQ(agreed[0].post.id, "p0");
  EXPECT_EQ(parse_resolver("agreements_only"), Resolver::kAgreementsOnly);
  EXPECT_EQ(to_string(Resolver::kAnnotator2), "annotator2");
  EXPECT_FALSE(parse_resolver("majority").has_value());
}

TEST(LogTest, ReplayRestoresState) {
  const auto dir = testing::temp_dir("annotation-log");
  const auto log = dir / "s.jsonl";
  {
    auto s = make_session(3);
    s->attach_log(log);
    s->submit("ann1", "p0", pat("OFF-TIN-IND"));
    s->submit("ann2", "p0", pat("NOT"));
    s->submit("ann1", "p0", pat("OFF-UNT"));
  }
  auto back = AnnotationSession::replay(log);
  EXPECT_EQ(back->session_id(), "s1");
  EXPECT_EQ(back->posts().size(), 3u);
  EXPECT_EQ(back->label_of("ann1", "p0"), pat("OFF-UNT"));
  EXPECT_EQ(back->label_of("ann2", "p0"), pat("NOT"));
  back->submit("ann1", "p1", pat("NOT"));
  back.reset();
  EXPECT_EQ(AnnotationSession::replay(log)->label_of("ann1", "p1"), pat("NOT"));

  write_file(dir / "bad.jsonl", "{\"type\":\"label\"}\n");
  EXPECT_THROW(AnnotationSession::replay(dir / "bad.jsonl"), ParseError);
}

TEST(LabelJsonTest, RoundTripAndValidation) {
  for (const auto &p : {"NOT", "OFF-UNT", "OFF-TIN-GRP"}) {
    EXPECT_EQ(label_from_json(label_to_json(pat(p))), pat(p));
  }
  EXPECT_THROW(label_from_json(nlohmann::json{{"a", "MAYBE"}}), ValidationError);
  EXPECT_THROW(label_from_json(nlohmann::json{{"b", "TIN"}}), ValidationError);
  EXPECT_THROW(label_from_json(nlohmann::json::array()), ValidationError);
}

TEST(ServiceTest, StatusCodes) {
  AnnotationService svc;
  svc.add_session(make_session(3));
  EXPECT_EQ(svc.handle("GET", "/session/s1", {}, "").status, 200);
  EXPECT_EQ(svc.handle("GET", "/session/nope", {}, "").status, 404);
  EXPECT_EQ(svc.handle("GET", "/session/s1/bogus", {}, "").status, 404);
  EXPECT_EQ(svc.handle("DELETE", "/session/s1/label", {}, "").status, 405);
  EXPECT_EQ(svc.handle("GET", "/session/s1/agreement", {}, "").status, 409);
  EXPECT_EQ(svc.handle("GET", "/session/s1/next", {}, "").status, 400);
  EXPECT_EQ(svc.handle("GET", "/session/s1/next", {{"annotator", "x"}}, "").status, 404);
  EXPECT_EQ(svc.handle("POST", "/session/s1/label", {}, "{not json").status, 400);
  const std::string bad_label =
      R"({"annotator":"ann1","post_id":"p0","label":{"a":"NOT","b":"TIN"}})";
  EXPECT_EQ(svc.handle("POST", "/session/s1/label", {}, bad_label).status, 400);
  EXPECT_EQ(svc.handle("GET", "/session/s1/export", {{"resolver", "annotator1"}}, "").status,
            409);
  EXPECT_EQ(svc.handle("GET", "/session/s1/export", {{"resolver", "vote"}}, "").status, 400);
  const std::string ok = R"({"annotator":"ann1","post_id":"p0","label":{"a":"NOT"}})";
  const ServiceResponse r = svc.handle("POST", "/session/s1/label", {}, ok);
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(nlohmann::json::parse(r.body)["stored"], true);
  const auto next = nlohmann::json::parse(
      svc.handle("GET", "/session/s1/next", {{"annotator", "ann1"}}, "").body);
  EXPECT_EQ(next["post"]["id"], "p1");
}

TEST(ServerTest, EndToEndOverHttp) {
  AnnotationService svc;
  svc.add_session(make_session(50, "e2e"));
  AnnotationServer server(svc);
  const int port = server.start("127.0.0.1", 0);
  ASSERT_GT(port, 0);
  httplib::Client client("127.0.0.1", port);

  const std::vector<std::string> patterns = {"NOT", "OFF-UNT", "OFF-TIN-IND", "OFF-TIN-GRP",
                                             "OFF-TIN-OTH"};
  for (const std::string annotator : {"ann1", "ann2"}) {
    for (int i = 0;; ++i) {
      auto res = client.Get("/session/e2e/next?annotator=" + annotator);
      ASSERT_TRUE(res);
      ASSERT_EQ(res->status, 200);
      const auto next = nlohmann::json::parse(res->body);
      if (next["done"].get<bool>()) break;
      const std::string id = next["post"]["id"];
      const int n = std::stoi(id.substr(1));
      const std::string label =
          patterns[static_cast<std::size_t>(annotator == "ann2" && n % 5 == 0 ? (n + 1) % 5
                                                                               : n % 5)];
      const nlohmann::json body = {
          {"annotator", annotator}, {"post_id", id}, {"label", label_to_json(pat(label))}};
      auto posted = client.Post("/session/e2e/label", body.dump(), "application/json");
      ASSERT_TRUE(posted);
      ASSERT_EQ(posted->status, 200);
    }
  }

  auto agreement = client.Get("/session/e2e/agreement");
  ASSERT_TRUE(agreement);
  const auto aj = nlohmann::json::parse(agreement->body);
  EXPECT_NEAR(aj["jaccard_a"].get<double>(), jaccard_from_counts(40, 50), 1e-12);

  auto exported = client.Get("/session/e2e/export?resolver=agreements_only&format=tsv");
  ASSERT_TRUE(exported);
  ASSERT_EQ(exported->status, 200);
  const auto dir = testing::temp_dir("annotation-e2e");
  write_file(dir / "agreed.tsv", exported->body);
  const Dataset agreed = load_olid_tsv(dir / "agreed.tsv");
  ASSERT_EQ(agreed.size(), 40u);
  for (const auto &item : agreed.items()) {
    const int n = std::stoi(item.post.id.substr(1));
    EXPECT_NE(n % 5, 0);
    EXPECT_EQ(item.label.pattern(), patterns[static_cast<std::size_t>(n % 5)]);
  }

  auto missing = client.Get("/session/none");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
  server.stop();
}

TEST(ConcurrencyTest, ParallelSubmissionsAreAllRecorded) {
  auto s = make_session(400);
  std::vector<std::thread> workers;
  for (int t = 0; t < 4; ++t) {
    workers.emplace_back([&s, t] {
      for (int i = t; i < 400; i += 4) {
        const std::string id = "p" + std::to_string(i);
        s->submit("ann1", id, pat("NOT"));
        s->submit("ann2", id, pat("NOT"));
        s->agreement();
      }
    });
  }
  for (auto &w : workers) w.join();
  EXPECT_EQ(s->labeled_count("ann1"), 400u);
  EXPECT_EQ(s->labeled_count("ann2"), 400u);
  EXPECT_EQ(s->agreement().jaccard_a, 1.0);
}

}  // namespace
}  // namespace offlang
