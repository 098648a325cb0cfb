// Copyright 2026 The Chronoret Authors.
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

// Single entry point for corpus generation, task building, training,
// evaluation, ablations and report rendering. Every artifact lives under one
// run directory.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "chronoret/ablation.hpp"
#include "chronoret/checkpoint.hpp"
#include "chronoret/corpus.hpp"
#include "chronoret/early_response.hpp"
#include "chronoret/error.hpp"
#include "chronoret/evaluate.hpp"
#include "chronoret/fs_util.hpp"
#include "chronoret/generator.hpp"
#include "chronoret/gradcheck.hpp"
#include "chronoret/hash.hpp"
#include "chronoret/kernels.hpp"
#include "chronoret/pipeline.hpp"
#include "chronoret/run_config.hpp"
#include "chronoret/tasks.hpp"
#include "chronoret/train.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace chronoret {
namespace {

constexpr double kGradTolerance = 1e-4;

struct GlobalFlags {
  std::string run_dir;
  std::string config_path;
  std::vector<std::string> sets;
  std::optional<int> jobs;
  std::optional<uint64_t> seed;
};

class RunDir {
 public:
  explicit RunDir(std::string root) : root_(std::move(root)) {}
  const std::string& root() const { return root_; }
  std::string config() const { return root_ + "/config"; }
  std::string corpus_dir() const { return root_ + "/corpus"; }
  std::string corpus_file() const { return corpus_dir() + "/corpus.jsonl"; }
  std::string tasks(TaskKind t) const { return root_ + "/tasks/" + std::string(to_string(t)) + ".jsonl"; }
  std::string checkpoint(const std::string& name) const { return root_ + "/checkpoints/" + name + ".json"; }
  std::string report(const std::string& stem) const { return root_ + "/reports/" + stem; }
  std::string log(const std::string& stem) const { return root_ + "/logs/" + stem; }

 private:
  std::string root_;
};

RunDir require_run(const GlobalFlags& g) {
  if (g.run_dir.empty()) throw ConfigError("no run directory; pass --run DIR");
  return RunDir(g.run_dir);
}

// A preset chosen after the stored config replaces the stored train and task
// settings instead of being overridden by them.
bool preset_governed(const std::string& key) {
  return key == "preset" || key.rfind("train.", 0) == 0 || key.rfind("tasks.", 0) == 0;
}

// Stored run config, then --config, then --set, then global flags, then the
// subcommand's own flags.
RunConfig resolve(const GlobalFlags& g, const KeyValues& command_flags, bool use_stored = true) {
  KeyValues kv;
  if (!g.config_path.empty()) {
    if (!fs::exists(g.config_path)) throw ConfigError("config file not found: " + g.config_path);
    for (auto& e : parse_key_values(read_file(g.config_path), g.config_path)) kv.push_back(std::move(e));
  }
  for (const auto& s : g.sets) kv.push_back(parse_assignment(s));
  if (g.seed) kv.emplace_back("seed", std::to_string(*g.seed));
  if (g.jobs) kv.emplace_back("jobs", std::to_string(*g.jobs));
  for (const auto& e : command_flags) kv.push_back(e);
  if (use_stored && !g.run_dir.empty() && fs::exists(RunDir(g.run_dir).config())) {
    const std::string path = RunDir(g.run_dir).config();
    const bool new_preset = std::any_of(kv.begin(), kv.end(), [](const auto& e) { return e.first == "preset"; });
    KeyValues stored;
    for (auto& e : parse_key_values(read_file(path), path)) {
      if (!(new_preset && preset_governed(e.first))) stored.push_back(std::move(e));
    }
    kv.insert(kv.begin(), stored.begin(), stored.end());
  }
  RunConfig rc = resolve_run_config(kv);
  set_parallel_jobs(rc.jobs);
  return rc;
}

// Wall-clock figures go to their own log so result files stay reproducible.
class Timer {
 public:
  explicit Timer(std::string label) : label_(std::move(label)), start_(std::chrono::steady_clock::now()) {}
  void record(const RunDir& run) const {
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    ensure_directory(run.root() + "/logs");
    write_file_atomic(run.log("timing-" + label_ + ".json"),
                      json{{"command", label_}, {"wall_seconds", secs}}.dump() + "\n");
  }

 private:
  std::string label_;
  std::chrono::steady_clock::time_point start_;
};

Workspace open_workspace(const RunDir& run, const RunConfig& rc) {
  if (!fs::exists(run.corpus_file())) {
    throw Error("no corpus at " + run.corpus_file() + "; run gen-corpus first");
  }
  Workspace ws(load_corpus(run.corpus_file()), std::make_unique<DirectoryImageSource>(run.corpus_dir()));
  if (!rc.text_embeddings.empty()) ws.set_text_embeddings(load_external_embeddings(rc.text_embeddings));
  if (!rc.image_embeddings.empty()) ws.set_image_embeddings(load_external_embeddings(rc.image_embeddings));
  if (fs::exists(run.tasks(TaskKind::kTnrp))) ws.set_tnrp(load_tnrp(run.tasks(TaskKind::kTnrp)));
  if (fs::exists(run.tasks(TaskKind::kTgmp))) ws.set_tgmp(load_tgmp(run.tasks(TaskKind::kTgmp)));
  return ws;
}

ModelConfig model_for(const Workspace& ws, const RunConfig& rc) {
  ModelConfig m = rc.model;
  m.text_in = ws.text_dim(rc.features);
  m.vision_in = ws.vision_dim(rc.features);
  m.check();
  return m;
}

EvalMeta meta_for(const Model& m, const SerializationConfig& ser, const FeatureConfig& f, bool zero_shot) {
  EvalMeta meta;
  meta.model_fingerprint = m.config().fingerprint();
  meta.serialization_fingerprint = ser.fingerprint();
  meta.feature_fingerprint = f.fingerprint();
  meta.input_setting = std::string(to_string(f.input));
  meta.zero_shot = zero_shot;
  return meta;
}

void write_report(const RunDir& run, const std::string& stem, const std::string& json_text,
                  const std::string& table) {
  ensure_directory(run.root() + "/reports");
  write_file_atomic(run.report(stem + ".json"), json_text);
  write_file_atomic(run.report(stem + ".txt"), table);
  std::cout << table;
}

// ---- gen-corpus ------------------------------------------------------------

struct GenFlags {
  std::optional<int> episodes;
  std::string modality;
  std::string llm_url;
};

int cmd_gen_corpus(const GlobalFlags& g, const GenFlags& f) {
  const RunDir run = require_run(g);
  KeyValues kv;
  if (f.episodes) kv.emplace_back("corpus.episodes", std::to_string(*f.episodes));
  if (!f.modality.empty()) kv.emplace_back("corpus.modality", f.modality);
  if (!f.llm_url.empty()) kv.emplace_back("corpus.llm_url", f.llm_url);
  const RunConfig rc = resolve(g, kv, /*use_stored=*/false);
  rc.generator.check();
  Timer timer("gen-corpus");

  std::unique_ptr<ChatClient> client;
  if (!rc.llm_url.empty()) {
    const char* token = std::getenv(std::string(kTokenEnvVar).c_str());
    client = std::make_unique<HttpChatClient>(rc.llm_url, token ? token : "");
  }
  GeneratedCorpus gen = generate_synthetic_corpus(rc.generator, rc.seed, client.get());

  for (const char* sub : {"", "/corpus", "/tasks", "/checkpoints", "/reports", "/logs"}) {
    ensure_directory(run.root() + sub);
  }
  write_file_atomic(run.config(), rc.to_text());
  save_corpus(gen.corpus, run.corpus_file());
  write_corpus_images(gen.images, run.corpus_dir());

  ValidationOptions vopts;
  vopts.max_memories = rc.train.max_memories;
  const ValidationReport report = validate_corpus(gen.corpus, vopts);
  write_file_atomic(run.report("validation.json"), validation_report_json(report));
  timer.record(run);
  std::printf("corpus: %zu users, %zu memories, %zu episodes (%zu later, %zu early)\n", report.n_users,
              report.n_memories, report.n_episodes, report.n_later, report.n_early);
  for (const auto& v : report.violations) {
    std::fprintf(stderr, "violation %s %s: %s\n", v.code.c_str(), v.id.c_str(), v.detail.c_str());
  }
  return report.ok() ? 0 : 1;
}

// ---- build-tasks -----------------------------------------------------------

int cmd_build_tasks(const GlobalFlags& g, std::optional<int> n_candidates) {
  const RunDir run = require_run(g);
  KeyValues kv;
  if (n_candidates) kv.emplace_back("tasks.C", std::to_string(*n_candidates));
  const RunConfig rc = resolve(g, kv);
  Timer timer("build-tasks");
  const Corpus corpus = load_corpus(run.corpus_file());
  const std::size_t C = rc.train.n_candidates;
  const auto tnrp = build_tnrp(corpus, C, rc.seed);
  const auto tgmp = build_tgmp(corpus, C, rc.seed);
  ensure_directory(run.root() + "/tasks");
  write_file_atomic(run.tasks(TaskKind::kTnrp), tnrp_to_jsonl(corpus, tnrp));
  write_file_atomic(run.tasks(TaskKind::kTgmp), tgmp_to_jsonl(corpus, tgmp));
  timer.record(run);
  std::printf("tasks: %zu tnrp, %zu tgmp instances, C=%zu\n", tnrp.size(), tgmp.size(), C);
  return 0;
}

// ---- train -----------------------------------------------------------------

struct TrainFlags {
  std::string task;
  std::string head;
  std::string atm_mode;
  std::string preset;
  bool time_stripped = false;
  std::string name;
};

KeyValues train_overrides(const TrainFlags& f) {
  KeyValues kv;
  if (!f.preset.empty()) kv.emplace_back("preset", f.preset);
  if (!f.task.empty()) kv.emplace_back("task", f.task);
  if (!f.head.empty()) kv.emplace_back("model.head", f.head);
  if (!f.atm_mode.empty()) kv.emplace_back("model.atm_mode", f.atm_mode);
  if (f.time_stripped) {
    kv.emplace_back("serialization.include_time", "false");
    kv.emplace_back("serialization.relative_tokens", "false");
    kv.emplace_back("serialization.compound_tokens", "false");
  }
  return kv;
}

std::string default_checkpoint_name(const RunConfig& rc, bool time_stripped) {
  std::string name = std::string(to_string(rc.task)) + "-" + std::string(to_string(rc.model.head));
  if (rc.model.head == HeadKind::kAtm && rc.model.atm_mode != AtmMode::kScalarPerModality) {
    name += "-" + std::string(to_string(rc.model.atm_mode));
  }
  if (time_stripped) name += "-stripped";
  return name;
}

// Trains on the train split and stores checkpoint and step log under name.
Checkpoint train_and_save(const RunDir& run, const Workspace& ws, const RunConfig& rc, const std::string& name) {
  Timer timer("train-" + name);
  const PreparedSet set = ws.prepare(rc.task, Split::kTrain, rc.serialization, rc.features);
  std::string log;
  const TrainResult r = train(set, model_for(ws, rc), rc.train, [&log](const std::string& line) {
    log += line;
    log += '\n';
  });
  const Checkpoint ckpt = make_checkpoint(rc.task, r, rc.train, rc.serialization, rc.features);
  ensure_directory(run.root() + "/checkpoints");
  ensure_directory(run.root() + "/logs");
  save_checkpoint(ckpt, run.checkpoint(name));
  write_file_atomic(run.log("train-" + name + ".jsonl"), log);
  timer.record(run);
  std::printf("trained %s on %zu instances; epoch losses:", name.c_str(), set.items.size());
  for (double l : r.loss_history) std::printf(" %.4f", l);
  std::printf("\n");
  return ckpt;
}

int cmd_train(const GlobalFlags& g, const TrainFlags& f) {
  const RunDir run = require_run(g);
  const RunConfig rc = resolve(g, train_overrides(f));
  const Workspace ws = open_workspace(run, rc);
  const std::string name = f.name.empty() ? default_checkpoint_name(rc, f.time_stripped) : f.name;
  train_and_save(run, ws, rc, name);
  return 0;
}

// ---- eval ------------------------------------------------------------------

struct EvalFlags {
  std::string checkpoint;
  std::string split = "test";
  std::string input;
};

std::string checkpoint_path(const RunDir& run, const std::string& ref) {
  if (fs::is_regular_file(ref)) return ref;
  const std::string p = run.checkpoint(ref);
  if (!fs::exists(p)) throw Error("checkpoint not found: " + ref);
  return p;
}

int cmd_eval(const GlobalFlags& g, const EvalFlags& f) {
  const RunDir run = require_run(g);
  const RunConfig rc = resolve(g, {});
  if (f.checkpoint.empty()) throw ConfigError("eval needs --checkpoint");
  const Split split = parse_split(f.split);
  const Checkpoint ckpt = load_checkpoint(checkpoint_path(run, f.checkpoint));
  FeatureConfig features = ckpt.features;
  if (!f.input.empty()) features.input = parse_input_setting(f.input);
  Timer timer("eval");
  const Workspace ws = open_workspace(run, rc);
  const Model model = ckpt.build_model();
  const PreparedSet set = ws.prepare(ckpt.task, split, ckpt.serialization, features);
  const EvalReport report = evaluate(model, set, meta_for(model, ckpt.serialization, features, false));
  std::string stem = "eval-" + fs::path(f.checkpoint).stem().string() + "-" + f.split;
  if (!f.input.empty()) stem += "-" + std::string(to_string(features.input));
  write_report(run, stem, eval_report_json(report), eval_report_table(report));
  timer.record(run);
  return 0;
}

// ---- ablate ----------------------------------------------------------------

int ablate_zero_shot_cmd(const RunDir& run, const RunConfig& rc) {
  const Workspace ws = open_workspace(run, rc);
  const PreparedSet set = ws.prepare(rc.task, Split::kTest, rc.serialization, rc.features);
  ModelConfig mc;
  mc.head = HeadKind::kMean;
  mc.dim = rc.features.dim;
  mc.text_in = mc.vision_in = mc.dim;
  const EvalReport report = ablate_zero_shot(set, meta_for(Model(mc, 0), rc.serialization, rc.features, true));
  write_report(run, "zero-shot-" + std::string(to_string(rc.task)), eval_report_json(report),
               eval_report_table(report));
  return 0;
}

// Loads a checkpoint, training it first when absent.
Checkpoint ensure_checkpoint(const RunDir& run, const Workspace& ws, const RunConfig& rc, const std::string& name) {
  if (fs::exists(run.checkpoint(name))) return load_checkpoint(run.checkpoint(name));
  return train_and_save(run, ws, rc, name);
}

int ablate_time_cmd(const RunDir& run, const GlobalFlags& g, const std::string& preset) {
  TrainFlags aware_flags;
  aware_flags.head = "atm";
  aware_flags.preset = preset;
  TrainFlags stripped_flags = aware_flags;
  stripped_flags.time_stripped = true;
  const RunConfig aware_rc = resolve(g, train_overrides(aware_flags));
  const RunConfig stripped_rc = resolve(g, train_overrides(stripped_flags));
  const Workspace ws = open_workspace(run, aware_rc);

  const Checkpoint aware = ensure_checkpoint(run, ws, aware_rc, default_checkpoint_name(aware_rc, false));
  const Checkpoint stripped = ensure_checkpoint(run, ws, stripped_rc, default_checkpoint_name(stripped_rc, true));
  const Model aware_model = aware.build_model();
  const Model stripped_model = stripped.build_model();
  const PreparedSet aware_set = ws.prepare(aware.task, Split::kTest, aware.serialization, aware.features);
  const PreparedSet stripped_set = ws.prepare(stripped.task, Split::kTest, stripped.serialization, stripped.features);
  const TimeAblationReport report = ablate_time_stripped(
      aware_model, aware_set, meta_for(aware_model, aware.serialization, aware.features, false), stripped_model,
      stripped_set, meta_for(stripped_model, stripped.serialization, stripped.features, false));
  write_report(run, "time-ablation-" + std::string(to_string(aware.task)), time_ablation_json(report),
               time_ablation_table(report));
  return 0;
}

int ablate_fusion_cmd(const RunDir& run, const RunConfig& rc) {
  const Workspace ws = open_workspace(run, rc);
  const PreparedSet train_set = ws.prepare(rc.task, Split::kTrain, rc.serialization, rc.features);
  const PreparedSet test_set = ws.prepare(rc.task, Split::kTest, rc.serialization, rc.features);
  const auto rows = compare_fusions(train_set, test_set, model_for(ws, rc), rc.train);
  write_report(run, "fusion-comparison-" + std::string(to_string(rc.task)), fusion_comparison_json(rows),
               fusion_comparison_table(rows));
  return 0;
}

int cmd_ablate(const GlobalFlags& g, const std::string& kind, const std::string& preset) {
  const RunDir run = require_run(g);
  KeyValues kv;
  if (!preset.empty()) kv.emplace_back("preset", preset);
  const RunConfig rc = resolve(g, kv);
  Timer timer("ablate-" + kind);
  int code = 0;
  if (kind == "zero-shot") {
    code = ablate_zero_shot_cmd(run, rc);
  } else if (kind == "time-stripped") {
    code = ablate_time_cmd(run, g, preset);
  } else if (kind == "fusion-comparison") {
    code = ablate_fusion_cmd(run, rc);
  } else {
    throw ConfigError("unknown ablation '" + kind + "'");
  }
  timer.record(run);
  return code;
}

// ---- gradcheck -------------------------------------------------------------

int cmd_gradcheck(const GlobalFlags& g, bool all_heads, const std::string& only_head, int n_configs) {
  if (n_configs < 1) throw ConfigError("--configs must be >= 1");
  std::vector<HeadKind> heads = {HeadKind::kAtm, HeadKind::kAttention, HeadKind::kLinear, HeadKind::kMean};
  if (!all_heads && !only_head.empty()) heads = {parse_head_kind(only_head)};
  const uint64_t base_seed = g.seed.value_or(7);
  json out = json::object();
  bool ok = true;
  for (HeadKind head : heads) {
    double worst = 0.0;
    std::string worst_where;
    for (int k = 0; k < n_configs; ++k) {
      const uint64_t seed = hash_combine(base_seed, static_cast<uint64_t>(k) * 4 + static_cast<uint64_t>(head));
      ModelConfig mc;
      mc.head = head;
      mc.projections = (k % 2) == 1;
      mc.atm_mode = (k / 2) % 2 == 0 ? AtmMode::kScalarPerModality : AtmMode::kPerDimComplementary;
      mc.dim = 6;
      mc.text_in = mc.projections ? 5 : 6;
      mc.vision_in = mc.projections ? 7 : 6;
      const TaskKind task = (k % 5) == 4 ? TaskKind::kTnrp : TaskKind::kTgmp;
      const PreparedSet set = random_prepared_set(task, mc.text_in, mc.vision_in, 3 + k % 4, 1, seed);
      const Model model(mc, seed);
      GradCheckOptions opts;
      opts.seed = seed;
      const GradCheckResult r = grad_check(model, set, set.items[0], opts);
      if (r.max_rel_error > worst) {
        worst = r.max_rel_error;
        worst_where = r.worst_param;
      }
    }
    const bool pass = worst < kGradTolerance;
    ok = ok && pass;
    std::printf("%-10s max relative error %.3e over %d configs%s%s\n", std::string(to_string(head)).c_str(), worst,
                n_configs, worst_where.empty() ? "" : " (worst at ", worst_where.empty() ? "" : (worst_where + ")").c_str());
    out[std::string(to_string(head))] = {{"max_rel_error", worst}, {"configs", n_configs}, {"pass", pass}};
  }
  if (!g.run_dir.empty()) {
    ensure_directory(g.run_dir + "/reports");
    write_file_atomic(RunDir(g.run_dir).report("gradcheck.json"), out.dump(2) + "\n");
  }
  return ok ? 0 : 1;
}

// ---- report ----------------------------------------------------------------

std::string render_report(const std::string& text) {
  const json j = json::parse(text);
  if (j.contains("rows")) return fusion_comparison_table(parse_fusion_comparison(text));
  if (j.contains("time_aware")) {
    TimeAblationReport r;
    r.time_aware = parse_eval_report(j.at("time_aware").dump());
    r.time_stripped = parse_eval_report(j.at("time_stripped").dump());
    const json& inv = j.at("pair_invariance");
    r.invariance.n_pairs = inv.at("n_pairs").get<std::size_t>();
    r.invariance.identical_queries = inv.at("identical_queries").get<std::size_t>();
    r.invariance.identical_scores = inv.at("identical_scores").get<std::size_t>();
    const json& d = j.at("differing_label_pairs");
    r.aware_differing = {d.at("time_aware").at("n").get<std::size_t>(),
                         d.at("time_aware").at("recall_at_1").get<double>()};
    r.stripped_differing = {d.at("time_stripped").at("n").get<std::size_t>(),
                            d.at("time_stripped").at("recall_at_1").get<double>()};
    r.chance = d.at("chance").get<double>();
    return time_ablation_table(r);
  }
  if (j.contains("recall_at_1")) return eval_report_table(parse_eval_report(text));
  if (j.contains("counts")) {
    const json& c = j.at("counts");
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%-10s %8s %8s %8s %8s\n%-10s %8zu %8zu %8zu %8zu\n", "corpus", "episodes",
                  "later", "grounded", "early", j.at("ok").get<bool>() ? "valid" : "INVALID",
                  c.at("episodes").get<std::size_t>(), c.at("later").get<std::size_t>(),
                  c.at("later_grounded").get<std::size_t>(), c.at("early").get<std::size_t>());
    return buf;
  }
  std::string table;
  for (const auto& [head, v] : j.items()) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%-10s %.3e %s\n", head.c_str(), v.at("max_rel_error").get<double>(),
                  v.at("pass").get<bool>() ? "pass" : "FAIL");
    table += buf;
  }
  return table;
}

int cmd_report(const GlobalFlags& g) {
  const RunDir run = require_run(g);
  const fs::path dir = run.root() + "/reports";
  if (!fs::is_directory(dir)) throw Error("no reports under " + dir.string());
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::string all;
  for (const auto& p : files) {
    all += "== " + p.filename().string() + "\n";
    try {
      all += render_report(read_file(p.string()));
    } catch (const json::exception& e) {
      throw ParseError(p.string() + ": " + e.what());
    }
    all += "\n";
  }
  write_file_atomic(run.report("summary.txt"), all);
  std::cout << all;
  return 0;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"chronoret: time-aware multimodal persona retrieval"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  GlobalFlags g;
  app.add_option("--run", g.run_dir, "Run directory");
  app.add_option("--config", g.config_path, "Key-value config file");
  app.add_option("--set", g.sets, "Config override key=value (repeatable)");
  app.add_option("--jobs", g.jobs, "Worker threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", g.seed, "Global seed");

  GenFlags gen;
  auto* gen_cmd = app.add_subcommand("gen-corpus", "Generate and validate a synthetic corpus");
  gen_cmd->add_option("--out", g.run_dir, "Run directory (alias of --run)");
  gen_cmd->add_option("--seed", g.seed, "Global seed");
  gen_cmd->add_option("--episodes", gen.episodes, "Number of episodes")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--modality", gen.modality, "balanced or modality-switch");
  gen_cmd->add_option("--llm-url", gen.llm_url, "Chat-completion endpoint for Early responses");

  std::optional<int> n_candidates;
  auto* tasks_cmd = app.add_subcommand("build-tasks", "Build TNRP and TGMP instances");
  tasks_cmd->add_option("--C", n_candidates, "Candidates per instance")->check(CLI::Range(3, 100000));

  TrainFlags tr;
  auto* train_cmd = app.add_subcommand("train", "Train a fusion head");
  train_cmd->add_option("--task", tr.task, "tgmp or tnrp");
  train_cmd->add_option("--head", tr.head, "atm, attention, linear or mean");
  train_cmd->add_option("--atm-mode", tr.atm_mode, "scalar or per-dim");
  train_cmd->add_option("--preset", tr.preset, "desk or paper");
  train_cmd->add_option("--seed", g.seed, "Global seed");
  train_cmd->add_flag("--time-stripped", tr.time_stripped, "Drop dates and relative-time tokens");
  train_cmd->add_option("--name", tr.name, "Checkpoint name");

  EvalFlags ev;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a checkpoint");
  eval_cmd->add_option("--checkpoint", ev.checkpoint, "Checkpoint name or path")->required();
  eval_cmd->add_option("--split", ev.split, "train, val or test");
  eval_cmd->add_option("--input", ev.input, "dialogue-only or dialogue+memories");

  std::string ablation;
  std::string ablate_preset;
  auto* ablate_cmd = app.add_subcommand("ablate", "Run an ablation");
  ablate_cmd->add_option("kind", ablation, "zero-shot, time-stripped or fusion-comparison")->required();
  ablate_cmd->add_option("--preset", ablate_preset, "desk or paper");

  bool all_heads = false;
  std::string grad_head;
  int n_configs = 100;
  auto* grad_cmd = app.add_subcommand("gradcheck", "Compare analytic and numeric gradients");
  grad_cmd->add_flag("--all-heads", all_heads, "Check every fusion head");
  grad_cmd->add_option("--head", grad_head, "Check one head");
  grad_cmd->add_option("--configs", n_configs, "Seeded configurations per head");

  auto* report_cmd = app.add_subcommand("report", "Render stored reports as tables");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (gen_cmd->parsed()) return cmd_gen_corpus(g, gen);
  if (tasks_cmd->parsed()) return cmd_build_tasks(g, n_candidates);
  if (train_cmd->parsed()) return cmd_train(g, tr);
  if (eval_cmd->parsed()) return cmd_eval(g, ev);
  if (ablate_cmd->parsed()) return cmd_ablate(g, ablation, ablate_preset);
  if (grad_cmd->parsed()) return cmd_gradcheck(g, all_heads || grad_head.empty(), grad_head, n_configs);
  if (report_cmd->parsed()) return cmd_report(g);
  return 2;
}

}  // namespace
}  // namespace chronoret

int main(int argc, char** argv) {
  try {
    return chronoret::run_cli(argc, argv);
  } catch (const chronoret::ConfigError& e) {
    std::fprintf(stderr, "chronoret: config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "chronoret: %s\n", e.what());
    return 1;
  }
}
