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

// offlang: command-line front end for the offensive-language toolkit.
//
//   offlang split      --data all.tsv --fraction 0.8 --seed 7 --train-out ... --test-out ...
//   offlang prepare    --posts raw.tsv [--names names.txt] [--lexicon terms.txt] --out posts.tsv
//   offlang train      --model fast_bilstm --task A --data train.tsv --embeddings cc.da.vec --out m.json
//   offlang evaluate   --checkpoint m.json --data test.tsv
//   offlang pipeline   --model-a a.json --model-b b.json --model-c c.json --data test.tsv
//   offlang gridsearch --model learned_bilstm --task A --data train.tsv --grid "lr=0.01,0.001"
//   offlang analyze    --checkpoint m.json --data test.tsv
//   offlang serve      --session s1 --posts posts.tsv --annotators ann1,ann2
//   offlang benchmark  --train olid_train.tsv --test olid_test.tsv --embeddings en.vec
//
// Exit status: 0 success, 2 usage, 3 data, 4 runtime.

#include <csignal>
#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "offlang/analysis.h"
#include "offlang/annotation.h"
#include "offlang/annotation_server.h"
#include "offlang/corpus.h"
#include "offlang/errors.h"
#include "offlang/eval.h"
#include "offlang/features.h"
#include "offlang/models.h"
#include "offlang/text.h"

namespace offlang {
namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitRuntime = 4;

// Flags shared by the commands that load models or build features.
struct ResourceFlags {
  std::string embeddings;
  std::string sentiment;
  std::string pos_tags;
};

void add_resource_flags(CLI::App *cmd, ResourceFlags &r) {
  cmd->add_option("--embeddings", r.embeddings, "pretrained .vec embeddings")
      ->check(CLI::ExistingFile);
  cmd->add_option("--sentiment", r.sentiment, "sentiment lexicon (word<TAB>score)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--pos-tags", r.pos_tags, "POS tags (id<TAB>tok/TAG ...)")
      ->check(CLI::ExistingFile);
}

struct LoadedResources {
  std::optional<EmbeddingMatrix> embeddings;
  std::optional<PosTagMap> pos_tags;
  ModelResources resources;
};

std::unique_ptr<LoadedResources> load_resources(const ResourceFlags &flags) {
  auto out = std::make_unique<LoadedResources>();
  if (!flags.embeddings.empty()) {
    out->embeddings = load_pretrained_vec(flags.embeddings);
    out->resources.embeddings = &*out->embeddings;
    out->resources.embeddings_path = flags.embeddings;
  }
  if (!flags.sentiment.empty()) {
    out->resources.sentiment = load_sentiment_lexicon(flags.sentiment);
  }
  if (!flags.pos_tags.empty()) {
    out->pos_tags = load_pos_tags(flags.pos_tags);
    out->resources.pos_tags = &*out->pos_tags;
  }
  return out;
}

Task require_task(const std::string &s) {
  const auto t = parse_task(s);
  if (!t) throw ArgumentError("unknown task '" + s + "' (expected A, B or C)");
  return *t;
}

ModelKind require_kind(const std::string &s) {
  const auto k = parse_model_kind(s);
  if (!k) {
    throw ArgumentError("unknown model '" + s +
                        "' (majority, logreg, learned_bilstm, fast_bilstm, "
                        "aux_fast_bilstm)");
  }
  return *k;
}

nlohmann::json dataset_json(const std::string &path, const Dataset &d) {
  return {{"path", path},
          {"size", d.size()},
          {"checksum", std::to_string(d.checksum())}};
}

void write_json(const std::string &path, const nlohmann::json &j) {
  write_file(path, j.dump(2) + "\n");
}

// ---------------------------------------------------------------- split

struct SplitFlags {
  std::string data;
  double fraction = 0.8;
  std::string train_out;
  std::string test_out;
};

void run_split(const SplitFlags &f, std::uint64_t seed) {
  const Dataset d = load_olid_tsv(f.data);
  const auto [train, test] = stratified_split(d, f.fraction, seed);
  write_olid_tsv(train, f.train_out);
  write_olid_tsv(test, f.test_out);
  std::cout << "train " << train.size() << " posts -> " << f.train_out << "\n"
            << "test  " << test.size() << " posts -> " << f.test_out << "\n";
  for (const auto &[pattern, n] : distribution(train).counts) {
    std::cout << "  " << pattern << ": " << n << " / "
              << distribution(test).count(pattern) << "\n";
  }
}

// ---------------------------------------------------------------- prepare

struct PrepareFlags {
  std::string posts;
  std::string names;
  std::string lexicon;
  std::string out;
};

void run_prepare(const PrepareFlags &f) {
  std::vector<Post> posts = load_posts_tsv(f.posts);
  if (!f.names.empty()) {
    std::vector<std::string> names;
    for (const auto &line : load_lexicon(f.names).terms()) names.push_back(line);
    for (auto &p : posts) p.text = anonymize(p.text, names);
  }
  if (!f.lexicon.empty()) posts = lexicon_filter(posts, load_lexicon(f.lexicon));
  write_file(f.out, format_posts_tsv(posts));
  std::cout << posts.size() << " posts -> " << f.out << "\n";
}

// ---------------------------------------------------------------- train

struct TrainFlags {
  std::string model;
  std::string task;
  std::string data;
  std::string out = "model.json";
  std::string manifest;
  ResourceFlags res;
  TrainConfig cfg;
  std::string class_weights = "inverse_count";
};

void add_train_config_flags(CLI::App *cmd, TrainConfig &cfg) {
  cmd->add_option("--epochs", cfg.epochs, "training epochs")->capture_default_str();
  cmd->add_option("--batch-size", cfg.batch_size, "mini-batch size")->capture_default_str();
  cmd->add_option("--lr", cfg.lr, "Adam learning rate")->capture_default_str();
  cmd->add_option("--dropout", cfg.dropout, "dropout between layers")->capture_default_str();
  cmd->add_option("--l2", cfg.l2, "logistic regression L2 penalty")->capture_default_str();
  cmd->add_option("--max-iter", cfg.max_iter, "logistic regression iterations")
      ->capture_default_str();
  cmd->add_option("--max-len", cfg.max_len, "sequence length cap")->capture_default_str();
  cmd->add_option("--embedding-dim", cfg.embedding_dim, "learned embedding size")
      ->capture_default_str();
  cmd->add_option("--min-count", cfg.min_count, "learned vocabulary cutoff")
      ->capture_default_str();
  cmd->add_option("--optimizer", cfg.optimizer, "optimizer (adam)")->capture_default_str();
}

ClassWeighting parse_weighting(const std::string &s) {
  if (s == "inverse_count") return ClassWeighting::kInverseCount;
  if (s == "none") return ClassWeighting::kNone;
  throw ArgumentError("unknown class weighting '" + s + "' (inverse_count, none)");
}

void check_embedding_flags(ModelKind kind, const ResourceFlags &res) {
  if ((kind == ModelKind::kFastBiLstm || kind == ModelKind::kAuxFastBiLstm) &&
      res.embeddings.empty()) {
    throw ArgumentError(std::string(to_string(kind)) + " requires --embeddings");
  }
}

void run_train(TrainFlags f, std::uint64_t seed) {
  const ModelKind kind = require_kind(f.model);
  const Task task = require_task(f.task);
  f.cfg.seed = seed;
  f.cfg.class_weights = parse_weighting(f.class_weights);
  f.cfg.validate();
  check_embedding_flags(kind, f.res);

  const Dataset train = load_olid_tsv(f.data);
  const auto loaded = load_resources(f.res);
  TrainedModel model = train_model(kind, train, task, loaded->resources, f.cfg);
  model.set_pos_tags(loaded->resources.pos_tags);
  model.save(f.out);

  const ClassMetrics m = evaluate(model, train);
  nlohmann::json manifest = {{"command", "train"},
                             {"model", to_string(kind)},
                             {"task", to_string(task)},
                             {"seed", seed},
                             {"config", f.cfg.to_json()},
                             {"dataset", dataset_json(f.data, train)},
                             {"embeddings", f.res.embeddings},
                             {"checkpoint", f.out},
                             {"epoch_losses", model.epoch_losses()},
                             {"train_metrics", metrics_to_json(m)}};
  if (const auto c = model.majority_class()) {
    manifest["majority_class"] = task_classes(task)[static_cast<std::size_t>(*c)];
  }
  if (const EmbeddingMatrix *e = model.embeddings()) {
    manifest["embedding_checksum"] = std::to_string(e->checksum());
  }
  const std::string manifest_path = f.manifest.empty() ? f.out + ".manifest.json" : f.manifest;
  write_json(manifest_path, manifest);

  std::cout << "trained " << to_string(kind) << " for task " << to_string(task)
            << " on " << train.size() << " posts\n";
  if (manifest.contains("majority_class")) {
    std::cout << "majority class " << manifest["majority_class"].get<std::string>() << "\n";
  }
  for (std::size_t e = 0; e < model.epoch_losses().size(); ++e) {
    std::printf("epoch %zu loss %.6f\n", e + 1, model.epoch_losses()[e]);
  }
  std::cout << format_report(m, "training set") << "checkpoint " << f.out
            << "\nmanifest " << manifest_path << "\n";
}

// ---------------------------------------------------------------- evaluate

struct EvalFlags {
  std::string checkpoint;
  std::string data;
  std::string task;
  std::string json_out;
  ResourceFlags res;
};

TrainedModel load_model(const std::string &path, const LoadedResources &loaded) {
  TrainedModel m = TrainedModel::load(path, loaded.embeddings ? &*loaded.embeddings : nullptr);
  m.set_pos_tags(loaded.resources.pos_tags);
  return m;
}

void run_evaluate(const EvalFlags &f) {
  const auto loaded = load_resources(f.res);
  const TrainedModel model = load_model(f.checkpoint, *loaded);
  if (!f.task.empty() && require_task(f.task) != model.task()) {
    throw ArgumentError("checkpoint was trained for task " +
                        std::string(to_string(model.task())) + ", not " + f.task);
  }
  const Dataset test = load_olid_tsv(f.data);
  const ClassMetrics m = evaluate(model, test);
  std::cout << format_report(m, std::string(to_string(model.kind())) + ", task " +
                                    std::string(to_string(model.task())))
            << format_key_values(m);
  if (!f.json_out.empty()) {
    write_json(f.json_out, {{"command", "evaluate"},
                            {"checkpoint", f.checkpoint},
                            {"model", to_string(model.kind())},
                            {"task", to_string(model.task())},
                            {"dataset", dataset_json(f.data, test)},
                            {"metrics", metrics_to_json(m)}});
  }
}

// ---------------------------------------------------------------- pipeline

struct PipelineFlags {
  std::string a, b, c;
  std::string data;
  std::string json_out;
  std::string predictions_out;
  ResourceFlags res;
};

void run_pipeline_cmd(const PipelineFlags &f) {
  const auto loaded = load_resources(f.res);
  const TrainedModel a = load_model(f.a, *loaded);
  const TrainedModel b = load_model(f.b, *loaded);
  const TrainedModel c = load_model(f.c, *loaded);
  const Dataset test = load_olid_tsv(f.data);
  const ClassMetrics m = evaluate_pipeline(a, b, c, test);
  std::cout << format_report(m, "pipeline A -> B -> C") << format_key_values(m);
  if (!f.predictions_out.empty()) {
    const auto posts = test.posts();
    const auto labels = run_pipeline(a, b, c, posts);
    std::vector<LabeledPost> items;
    for (std::size_t i = 0; i < posts.size(); ++i) items.push_back({posts[i], labels[i]});
    write_olid_tsv(Dataset(test.name(), std::move(items)), f.predictions_out);
  }
  if (!f.json_out.empty()) {
    write_json(f.json_out, {{"command", "pipeline"},
                            {"checkpoints", {f.a, f.b, f.c}},
                            {"dataset", dataset_json(f.data, test)},
                            {"metrics", metrics_to_json(m)}});
  }
}

// ---------------------------------------------------------------- gridsearch

struct GridFlags {
  std::string model;
  std::string task;
  std::string data;
  std::string grid;
  std::size_t folds = 5;
  std::string json_out;
  ResourceFlags res;
  TrainConfig cfg;
};

void run_gridsearch(GridFlags f, std::uint64_t seed, std::size_t jobs) {
  const ModelKind kind = require_kind(f.model);
  const Task task = require_task(f.task);
  const ParamGrid grid = f.grid.empty() ? default_grid() : parse_grid(f.grid);
  f.cfg.seed = seed;
  f.cfg.validate();
  check_embedding_flags(kind, f.res);
  const Dataset train = load_olid_tsv(f.data);
  const auto loaded = load_resources(f.res);
  const GridSearchResult r =
      grid_search_cv(kind, train, task, grid, f.folds, seed, loaded->resources, f.cfg, jobs);

  nlohmann::json cells = nlohmann::json::array();
  for (std::size_t i = 0; i < r.cells.size(); ++i) {
    const GridCell &cell = r.cells[i];
    std::string desc;
    nlohmann::json assignment = nlohmann::json::object();
    for (const auto &[k, v] : cell.assignment) {
      desc += k + "=" + v + " ";
      assignment[k] = v;
    }
    std::printf("%s%-48s mean macro-F1 %.4f\n", i == r.best ? "* " : "  ", desc.c_str(),
                cell.mean_macro_f1);
    cells.push_back({{"assignment", assignment},
                     {"fold_scores", cell.fold_scores},
                     {"mean_macro_f1", cell.mean_macro_f1}});
  }
  if (!f.json_out.empty()) {
    write_json(f.json_out, {{"command", "gridsearch"},
                            {"model", to_string(kind)},
                            {"task", to_string(task)},
                            {"seed", seed},
                            {"folds", f.folds},
                            {"dataset", dataset_json(f.data, train)},
                            {"cells", cells},
                            {"best", r.best},
                            {"best_config", r.best_cell().config.to_json()}});
  }
}

// ---------------------------------------------------------------- analyze

struct AnalyzeFlags {
  std::string checkpoint;
  std::string data;
  std::size_t k = 20;
  int min_n = 1;
  int max_n = 2;
  bool chars = false;
  std::string json_out;
  ResourceFlags res;
};

void run_analyze(const AnalyzeFlags &f) {
  const auto loaded = load_resources(f.res);
  const TrainedModel model = load_model(f.checkpoint, *loaded);
  const Dataset test = load_olid_tsv(f.data).restrict_to(model.task());
  AnalysisOptions opts;
  opts.k = f.k;
  opts.range = {f.min_n, f.max_n};
  opts.mode = f.chars ? NgramMode::kChar : NgramMode::kWord;
  const auto reports = analyze_errors(model.predict(test.posts()), test, model.task(), opts);
  std::cout << format_analysis(reports);
  if (!f.json_out.empty()) {
    write_json(f.json_out, {{"command", "analyze"},
                            {"checkpoint", f.checkpoint},
                            {"dataset", dataset_json(f.data, test)},
                            {"slices", analysis_to_json(reports)}});
  }
}

// ---------------------------------------------------------------- serve

struct ServeFlags {
  std::string session;
  std::string posts;
  std::vector<std::string> annotators{"annotator1", "annotator2"};
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string log;
  std::string profanity;
  std::string guideline_version = "1";
};

AnnotationServer *g_server = nullptr;

void run_serve(const ServeFlags &f) {
  if (f.annotators.size() != 2) throw ArgumentError("--annotators needs exactly two ids");
  std::optional<Lexicon> profanity;
  if (!f.profanity.empty()) profanity = load_lexicon(f.profanity);
  const std::string log = f.log.empty() ? f.session + ".log.jsonl" : f.log;

  std::unique_ptr<AnnotationSession> session;
  if (std::filesystem::exists(log) && std::filesystem::file_size(log) > 0) {
    session = AnnotationSession::replay(log, profanity);
    if (session->session_id() != f.session) {
      throw ValidationError("log " + log + " belongs to session '" +
                            session->session_id() + "'");
    }
    std::cout << "replayed session " << f.session << " from " << log << "\n";
  } else {
    if (f.posts.empty()) throw ArgumentError("--posts is required for a new session");
    session = std::make_unique<AnnotationSession>(
        f.session, load_posts_tsv(f.posts),
        std::array<std::string, 2>{f.annotators[0], f.annotators[1]},
        f.guideline_version, profanity);
    session->attach_log(log);
  }
  AnnotationService service;
  service.add_session(std::move(session));
  AnnotationServer server(service);
  g_server = &server;
  std::signal(SIGINT, [](int) { if (g_server) g_server->stop(); });
  std::signal(SIGTERM, [](int) { if (g_server) g_server->stop(); });
  std::cout << "serving session " << f.session << " on http://" << f.host << ":"
            << f.port << "/session/" << f.session << std::endl;
  server.serve(f.host, f.port);
  g_server = nullptr;
}

// ---------------------------------------------------------------- benchmark

struct BenchmarkFlags {
  std::string train;
  std::string test;
  ResourceFlags res;
  TrainConfig cfg;
};

void run_benchmark(BenchmarkFlags f, std::uint64_t seed) {
  constexpr double kPaperScore = 0.735;
  if (f.res.embeddings.empty()) throw ArgumentError("benchmark requires --embeddings");
  f.cfg.seed = seed;
  f.cfg.validate();
  const Dataset train = load_olid_tsv(f.train);
  const Dataset test = load_olid_tsv(f.test);
  const auto loaded = load_resources(f.res);
  const TrainedModel model =
      train_model(ModelKind::kFastBiLstm, train, Task::kA, loaded->resources, f.cfg);
  const ClassMetrics m = evaluate(model, test);
  std::cout << format_report(m, "fast_bilstm, task A");
  const double delta = m.macro_f1 - kPaperScore;
  std::printf("macro-F1 %.4f vs reported %.3f (delta %+.4f)%s\n", m.macro_f1, kPaperScore,
              delta, std::abs(delta) > 0.05 ? "  [informational: beyond +-0.05]" : "");
}

}  // namespace
}  // namespace offlang

int main(int argc, char **argv) {
  using namespace offlang;
  CLI::App app{"offlang: offensive-language classification toolkit"};
  app.set_config("--config", "", "key = value configuration file (INI sections per command)");
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  app.add_option("--seed", seed, "random seed for every stochastic step")->capture_default_str();
  app.add_option("--jobs", jobs, "parallel grid-search cells")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  SplitFlags split;
  auto *cmd_split = app.add_subcommand("split", "stratified train/test split of an OLID TSV");
  cmd_split->add_option("--data", split.data, "labeled OLID TSV")->required()->check(CLI::ExistingFile);
  cmd_split->add_option("--fraction", split.fraction, "train fraction")->capture_default_str();
  cmd_split->add_option("--train-out", split.train_out, "train TSV output")->required();
  cmd_split->add_option("--test-out", split.test_out, "test TSV output")->required();

  PrepareFlags prep;
  auto *cmd_prep = app.add_subcommand("prepare", "anonymize names and filter posts by lexicon");
  cmd_prep->add_option("--posts", prep.posts, "posts TSV (id, tweet)")->required()->check(CLI::ExistingFile);
  cmd_prep->add_option("--names", prep.names, "names to replace with @USER, one per line")
      ->check(CLI::ExistingFile);
  cmd_prep->add_option("--lexicon", prep.lexicon, "keep only posts containing a term")
      ->check(CLI::ExistingFile);
  cmd_prep->add_option("--out", prep.out, "output posts TSV")->required();

  TrainFlags train;
  auto *cmd_train = app.add_subcommand("train", "train a classifier and write a checkpoint");
  cmd_train->add_option("--model", train.model, "model kind")->required();
  cmd_train->add_option("--task", train.task, "sub-task A, B or C")->required();
  cmd_train->add_option("--data", train.data, "training OLID TSV")->required()->check(CLI::ExistingFile);
  cmd_train->add_option("--out", train.out, "checkpoint path")->capture_default_str();
  cmd_train->add_option("--manifest", train.manifest, "manifest path (default <out>.manifest.json)");
  cmd_train->add_option("--class-weights", train.class_weights, "inverse_count or none")
      ->capture_default_str();
  add_resource_flags(cmd_train, train.res);
  add_train_config_flags(cmd_train, train.cfg);

  EvalFlags eval;
  auto *cmd_eval = app.add_subcommand("evaluate", "score a checkpoint on a labeled set");
  cmd_eval->add_option("--checkpoint", eval.checkpoint, "model checkpoint")->required()->check(CLI::ExistingFile);
  cmd_eval->add_option("--data", eval.data, "test OLID TSV")->required()->check(CLI::ExistingFile);
  cmd_eval->add_option("--task", eval.task, "expected task of the checkpoint");
  cmd_eval->add_option("--json", eval.json_out, "write metrics JSON");
  add_resource_flags(cmd_eval, eval.res);

  PipelineFlags pipe;
  auto *cmd_pipe = app.add_subcommand("pipeline", "cascade A -> B -> C and score full labels");
  cmd_pipe->add_option("--model-a", pipe.a, "task A checkpoint")->required()->check(CLI::ExistingFile);
  cmd_pipe->add_option("--model-b", pipe.b, "task B checkpoint")->required()->check(CLI::ExistingFile);
  cmd_pipe->add_option("--model-c", pipe.c, "task C checkpoint")->required()->check(CLI::ExistingFile);
  cmd_pipe->add_option("--data", pipe.data, "test OLID TSV")->required()->check(CLI::ExistingFile);
  cmd_pipe->add_option("--json", pipe.json_out, "write metrics JSON");
  cmd_pipe->add_option("--predictions", pipe.predictions_out, "write predicted labels as OLID TSV");
  add_resource_flags(cmd_pipe, pipe.res);

  GridFlags grid;
  auto *cmd_grid = app.add_subcommand("gridsearch", "k-fold grid search over hyper-parameters");
  cmd_grid->add_option("--model", grid.model, "model kind")->required();
  cmd_grid->add_option("--task", grid.task, "sub-task A, B or C")->required();
  cmd_grid->add_option("--data", grid.data, "training OLID TSV")->required()->check(CLI::ExistingFile);
  cmd_grid->add_option("--grid", grid.grid, "e.g. \"lr=0.01,0.001;batch_size=32,64\"");
  cmd_grid->add_option("--folds", grid.folds, "cross-validation folds")->capture_default_str();
  cmd_grid->add_option("--json", grid.json_out, "write the result table as JSON");
  add_resource_flags(cmd_grid, grid.res);
  add_train_config_flags(cmd_grid, grid.cfg);

  AnalyzeFlags analyze;
  auto *cmd_an = app.add_subcommand("analyze", "mine misclassified posts");
  cmd_an->add_option("--checkpoint", analyze.checkpoint, "model checkpoint")->required()->check(CLI::ExistingFile);
  cmd_an->add_option("--data", analyze.data, "test OLID TSV")->required()->check(CLI::ExistingFile);
  cmd_an->add_option("--k", analyze.k, "n-grams per slice")->capture_default_str();
  cmd_an->add_option("--min-n", analyze.min_n, "smallest n")->capture_default_str();
  cmd_an->add_option("--max-n", analyze.max_n, "largest n")->capture_default_str();
  cmd_an->add_flag("--chars", analyze.chars, "character instead of word n-grams");
  cmd_an->add_option("--json", analyze.json_out, "write the report as JSON");
  add_resource_flags(cmd_an, analyze.res);

  ServeFlags serve;
  auto *cmd_serve = app.add_subcommand("serve", "run the annotation HTTP service");
  cmd_serve->add_option("--session", serve.session, "session id")->required();
  cmd_serve->add_option("--posts", serve.posts, "posts TSV (new sessions)")->check(CLI::ExistingFile);
  cmd_serve->add_option("--annotators", serve.annotators, "two annotator ids")
      ->delimiter(',')
      ->capture_default_str();
  cmd_serve->add_option("--host", serve.host, "bind address")->capture_default_str();
  cmd_serve->add_option("--port", serve.port, "port")->capture_default_str();
  cmd_serve->add_option("--log", serve.log, "session log (default <session>.log.jsonl)");
  cmd_serve->add_option("--profanity", serve.profanity, "profanity lexicon for guideline warnings")
      ->check(CLI::ExistingFile);
  cmd_serve->add_option("--guideline-version", serve.guideline_version, "guideline version tag")
      ->capture_default_str();

  BenchmarkFlags bench;
  auto *cmd_bench = app.add_subcommand(
      "benchmark", "Fast-BiLSTM task A on user-supplied English data (informational)");
  cmd_bench->add_option("--train", bench.train, "English training OLID TSV")->required()->check(CLI::ExistingFile);
  cmd_bench->add_option("--test", bench.test, "English test OLID TSV")->required()->check(CLI::ExistingFile);
  add_resource_flags(cmd_bench, bench.res);
  add_train_config_flags(cmd_bench, bench.cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*cmd_split) run_split(split, seed);
    else if (*cmd_prep) run_prepare(prep);
    else if (*cmd_train) run_train(train, seed);
    else if (*cmd_eval) run_evaluate(eval);
    else if (*cmd_pipe) run_pipeline_cmd(pipe);
    else if (*cmd_grid) run_gridsearch(grid, seed, jobs);
    else if (*cmd_an) run_analyze(analyze);
    else if (*cmd_serve) run_serve(serve);
    else if (*cmd_bench) run_benchmark(bench, seed);
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.category()) {
      case Error::Category::kArgument: return kExitUsage;
      case Error::Category::kData: return kExitData;
      case Error::Category::kRuntime: return kExitRuntime;
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
