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

#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "offlang/corpus.h"
#include "offlang/text.h"
#include "support.h"

namespace offlang {
namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code = -1;
  std::string output;
};

std::string cli() {
  const char *path = std::getenv("OFFLANG_CLI");
  return path == nullptr ? "offlang" : path;
}

RunResult run(const std::string &args) {
  RunResult r;
  FILE *pipe = popen((cli() + " " + args + " 2>&1").c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = testing::temp_dir(::testing::UnitTest::GetInstance()->current_test_info()->name());
    data_ = (dir_ / "data.tsv").string();
    write_olid_tsv(testing::keyword_corpus(200, 12).data, data_);
  }
  std::string path(const std::string &name) const { return (dir_ / name).string(); }

  fs::path dir_;
  std::string data_;
};

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("train --model majority --task A").code, 2);
  EXPECT_EQ(run("train --model svm --task A --data " + data_ + " --out " + path("m.json")).code,
            2);
  EXPECT_EQ(run("train --model majority --task Z --data " + data_).code, 2);
  EXPECT_EQ(run("split --data " + path("missing.tsv") + " --train-out a --test-out b").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST_F(CliTest, MalformedDataExitsThree) {
  write_file(path("bad.tsv"), "id\ttweet\tsubtask_a\tsubtask_b\tsubtask_c\n1\thi\tMAYBE\tNULL\tNULL\n");
  const RunResult r = run("train --model majority --task A --data " + path("bad.tsv") +
                          " --out " + path("m.json"));
  EXPECT_EQ(r.code, 3) << r.output;
}

TEST_F(CliTest, SplitIsDeterministic) {
  ASSERT_EQ(run("--seed 4 split --data " + data_ + " --train-out " + path("tr1.tsv") +
                " --test-out " + path("te1.tsv"))
                .code,
            0);
  ASSERT_EQ(run("--seed 4 split --data " + data_ + " --train-out " + path("tr2.tsv") +
                " --test-out " + path("te2.tsv"))
                .code,
            0);
  EXPECT_EQ(read_file(path("tr1.tsv")), read_file(path("tr2.tsv")));
  EXPECT_EQ(read_file(path("te1.tsv")), read_file(path("te2.tsv")));
  EXPECT_EQ(load_olid_tsv(path("tr1.tsv")).size() + load_olid_tsv(path("te1.tsv")).size(), 200u);
}

TEST_F(CliTest, MajorityManifestReportsNot) {
  const std::string args = "train --model majority --task A --data " + data_ + " --out ";
  ASSERT_EQ(run(args + path("a.json")).code, 0);
  const auto manifest = nlohmann::json::parse(read_file(path("a.json.manifest.json")));
  EXPECT_EQ(manifest["majority_class"], "NOT");
  EXPECT_EQ(manifest["dataset"]["size"], 200);
  const RunResult eval = run("evaluate --checkpoint " + path("a.json") + " --data " + data_);
  EXPECT_EQ(eval.code, 0);
  EXPECT_NE(eval.output.find("NOT"), std::string::npos);
}

TEST_F(CliTest, TrainingRerunGivesIdenticalArtifacts) {
  const std::string args = "--seed 9 train --model logreg --task A --epochs 2 --data " + data_;
  ASSERT_EQ(run(args + " --out " + path("m.json") + " --manifest " + path("m1.json")).code, 0);
  ASSERT_EQ(run(args + " --out " + path("m.json") + " --manifest " + path("m2.json")).code, 0);
  EXPECT_EQ(read_file(path("m1.json")), read_file(path("m2.json")));
}

TEST_F(CliTest, EvaluateRejectsTaskMismatch) {
  ASSERT_EQ(run("train --model majority --task A --data " + data_ + " --out " + path("a.json"))
                .code,
            0);
  EXPECT_EQ(run("evaluate --checkpoint " + path("a.json") + " --data " + data_ + " --task B")
                .code,
            2);
}

TEST_F(CliTest, SingletonGridSearch) {
  const RunResult r = run("gridsearch --model logreg --task A --data " + data_ +
                          " --grid l2=0.01 --folds 3 --json " + path("grid.json"));
  ASSERT_EQ(r.code, 0) << r.output;
  const auto j = nlohmann::json::parse(read_file(path("grid.json")));
  EXPECT_EQ(j["cells"].size(), 1u);
}

TEST_F(CliTest, PipelineAndAnalyze) {
  for (const char *task : {"A", "B", "C"}) {
    ASSERT_EQ(run(std::string("train --model majority --task ") + task + " --data " + data_ +
                  " --out " + path(std::string(task) + ".json"))
                  .code,
              0);
  }
  const RunResult pipe = run("pipeline --model-a " + path("A.json") + " --model-b " +
                             path("B.json") + " --model-c " + path("C.json") + " --data " +
                             data_ + " --predictions " + path("pred.tsv"));
  EXPECT_EQ(pipe.code, 0) << pipe.output;
  EXPECT_EQ(load_olid_tsv(path("pred.tsv")).size(), 200u);
  const RunResult an = run("analyze --checkpoint " + path("A.json") + " --data " + data_ +
                           " --k 5 --json " + path("an.json"));
  EXPECT_EQ(an.code, 0) << an.output;
  EXPECT_EQ(nlohmann::json::parse(read_file(path("an.json")))["slices"].size(), 1u);
}

TEST_F(CliTest, ServeAnswersHttp) {
  write_file(path("posts.tsv"), "id\ttweet\nq1\thello there\nq2\tanother post\n");
  const int port = 20000 + static_cast<int>(getpid() % 20000);
  const std::string cmd = cli() + " serve --session cli --posts " + path("posts.tsv") +
                          " --annotators a,b --host 127.0.0.1 --port " +
                          std::to_string(port) + " --log " + path("log.jsonl") + " > " +
                          path("serve.out") + " 2>&1 & echo $! > " + path("pid");
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  httplib::Client client("127.0.0.1", port);
  httplib::Result res;
  for (int i = 0; i < 100 && !res; ++i) {
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
    res = client.Get("/session/cli/next?annotator=a");
  }
  const std::string pid = read_file(path("pid"));
  const int killed = std::system(("kill " + pid).c_str());
  EXPECT_EQ(killed, 0);
  ASSERT_TRUE(res) << read_file(path("serve.out"));
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(nlohmann::json::parse(res->body)["post"]["id"], "q1");
}

}  // namespace
}  // namespace offlang
