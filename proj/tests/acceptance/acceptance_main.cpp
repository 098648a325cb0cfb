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

// End-to-end acceptance run: one PASS/FAIL line per criterion, exit status 1
// if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "chronoret/ablation.hpp"
#include "chronoret/evaluate.hpp"
#include "chronoret/fs_util.hpp"
#include "chronoret/fusion.hpp"
#include "chronoret/generator.hpp"
#include "chronoret/gradcheck.hpp"
#include "chronoret/kernels.hpp"
#include "chronoret/metrics.hpp"
#include "chronoret/pipeline.hpp"
#include "chronoret/rng.hpp"
#include "chronoret/run_config.hpp"
#include "chronoret/tasks.hpp"
#include "chronoret/train.hpp"

#ifndef CHRONORET_CLI_PATH
#error "CHRONORET_CLI_PATH must point at the chronoret binary"
#endif

namespace chronoret {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

// --- 1: metric oracle -------------------------------------------------------

std::size_t rank_by_sorting(const std::vector<double>& s, std::size_t label) {
  std::vector<std::size_t> idx(s.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (s[a] != s[b]) return s[a] > s[b];
    if ((a == label) != (b == label)) return b == label;
    return a < b;
  });
  return static_cast<std::size_t>(std::find(idx.begin(), idx.end(), label) - idx.begin()) + 1;
}

Outcome metric_oracle() {
  const auto t0 = Clock::now();
  Rng rng(1);
  std::size_t mismatches = 0;
  const std::size_t sizes[] = {3, 10, 100};
  for (int m = 0; m < 1000; ++m) {
    const std::size_t c = sizes[m % 3];
    const std::size_t rows = 1 + rng.index(50);
    std::vector<std::size_t> fast, slow;
    for (std::size_t r = 0; r < rows; ++r) {
      std::vector<double> s(c);
      // Every third matrix uses coarse values so ties are exercised.
      for (double& x : s) x = m % 3 == 0 ? static_cast<double>(rng.uniform_int(0, 4)) : rng.uniform();
      const std::size_t label = rng.index(c);
      fast.push_back(rank_of_label(s, label));
      slow.push_back(rank_by_sorting(s, label));
    }
    if (recall_at_1(fast) != recall_at_1(slow) || mean_reciprocal_rank(fast) != mean_reciprocal_rank(slow)) {
      ++mismatches;
    }
  }
  const double t = seconds_since(t0);
  return {mismatches == 0 && t < 5.0, fmt("1000 matrices, %zu mismatches, %.2fs", mismatches, t)};
}

// --- 2: gradients -------------------------------------------------------------

Outcome gradient_check() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  std::string worst_where;
  int configs = 0;
  struct Variant {
    HeadKind head;
    AtmMode mode;
  };
  const Variant variants[] = {{HeadKind::kAtm, AtmMode::kScalarPerModality},
                              {HeadKind::kAtm, AtmMode::kPerDimComplementary},
                              {HeadKind::kAttention, AtmMode::kScalarPerModality},
                              {HeadKind::kLinear, AtmMode::kScalarPerModality},
                              {HeadKind::kMean, AtmMode::kScalarPerModality}};
  for (const Variant& v : variants) {
    for (bool projections : {false, true}) {
      for (uint64_t seed = 0; seed < 12; ++seed) {
        ModelConfig cfg;
        cfg.head = v.head;
        cfg.atm_mode = v.mode;
        cfg.projections = projections;
        cfg.dim = 6;
        cfg.text_in = projections ? 5 : 6;
        cfg.vision_in = projections ? 7 : 6;
        const TaskKind task = seed % 4 == 3 ? TaskKind::kTnrp : TaskKind::kTgmp;
        const PreparedSet set = random_prepared_set(task, cfg.text_in, cfg.vision_in, 3 + seed % 4, 1, seed * 31 + 5);
        const Model m(cfg, seed + 1000);
        const GradCheckResult r = grad_check(m, set, set.items.front(), {.step = 1e-5, .seed = seed});
        ++configs;
        if (r.max_rel_error > worst) {
          worst = r.max_rel_error;
          worst_where = std::string(to_string(v.head)) + "/" + r.worst_param;
        }
      }
    }
  }
  const double t = seconds_since(t0);
  return {worst < 1e-4 && configs >= 100 && t < 60.0,
          fmt("%d configs, max rel error %.2e (%s), %.2fs", configs, worst, worst_where.c_str(), t)};
}

// --- 3: reductions ------------------------------------------------------------

Outcome reduction_identities() {
  Rng rng(3);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t d = 1 + rng.index(64);
    std::vector<double> u(d), v(d), mean(d), out(d);
    for (double& x : u) x = rng.uniform(-5, 5);
    for (double& x : v) x = rng.uniform(-5, 5);
    fuse_mean(u, v, mean);
    auto track = [&] {
      for (std::size_t i = 0; i < d; ++i) worst = std::max(worst, std::abs(out[i] - mean[i]));
    };
    for (AtmMode mode : {AtmMode::kScalarPerModality, AtmMode::kPerDimComplementary}) {
      fuse_atm(u, v, AtmParams::zeros(mode, d).view(), out);
      track();
    }
    const AttentionParams zero{std::vector<double>(d, 0.0)};
    fuse_attention(u, v, zero.view(), out);
    track();
  }
  return {worst <= 1e-12, fmt("1000 random inputs, max deviation %.1e", worst)};
}

// --- 4: label rule ------------------------------------------------------------

Outcome label_rule_cases() {
  const bool ok = label_rule({2018, 1, 1}, DateStamp{2016, 5, 5}) == LabelKind::kGrounding &&
                  label_rule({2016, 5, 5}, DateStamp{2018, 1, 1}) == LabelKind::kNoMemory &&
                  label_rule({2018, 1, 1}, std::nullopt) == LabelKind::kNoMemory &&
                  label_rule({2018, 1, 1}, DateStamp{2018, 1, 1}) == LabelKind::kGrounding;
  return {ok, "earlier, later, absent and same-day grounding"};
}

// --- shared experiment state ----------------------------------------------------

RunConfig experiment_config(bool modality_switch) {
  KeyValues kv = {{"seed", "7"},
                  {"preset", "desk"},
                  {"corpus.val_fraction", "0"},
                  {"corpus.test_fraction", "0.1666667"}};
  if (modality_switch) kv.emplace_back("corpus.modality", "modality-switch");
  return resolve_run_config(kv);
}

struct Experiment {
  RunConfig cfg;
  std::unique_ptr<Workspace> ws;
  PreparedSet train_aware, test_aware;
};

Experiment make_experiment(bool modality_switch) {
  Experiment e;
  e.cfg = experiment_config(modality_switch);
  GeneratedCorpus g = generate_synthetic_corpus(e.cfg.generator, e.cfg.seed);
  e.ws = std::make_unique<Workspace>(std::move(g.corpus), std::make_unique<MemoryImageSource>(std::move(g.images)));
  e.ws->set_tgmp(build_tgmp(e.ws->corpus(), e.cfg.train.n_candidates, e.cfg.seed));
  e.train_aware = e.ws->prepare(TaskKind::kTgmp, Split::kTrain, e.cfg.serialization, e.cfg.features);
  e.test_aware = e.ws->prepare(TaskKind::kTgmp, Split::kTest, e.cfg.serialization, e.cfg.features);
  return e;
}

EvalMeta meta_for(const RunConfig& c, const SerializationConfig& ser, const ModelConfig& m) {
  EvalMeta meta;
  meta.model_fingerprint = m.fingerprint();
  meta.serialization_fingerprint = ser.fingerprint();
  meta.feature_fingerprint = c.features.fingerprint();
  return meta;
}

// --- 5: time-stripped invariance --------------------------------------------------

Outcome time_invariance(const Experiment& e) {
  const SerializationConfig stripped = SerializationConfig::time_stripped();
  const PreparedSet all_stripped = e.ws->prepare(TaskKind::kTgmp, std::nullopt, stripped, e.cfg.features);
  const PreparedSet all_aware = e.ws->prepare(TaskKind::kTgmp, std::nullopt, e.cfg.serialization, e.cfg.features);
  const Model m(e.cfg.model, e.cfg.seed);
  const PairInvariance inv = check_pair_invariance(m, all_stripped);

  std::map<std::string, std::vector<LabelKind>> by_pair;
  for (const auto& it : all_aware.items) by_pair[it.pair_key].push_back(it.label_kind);
  std::size_t pairs = 0, differing = 0;
  for (const auto& [key, kinds] : by_pair) {
    if (kinds.size() != 2) continue;
    ++pairs;
    if (kinds[0] != kinds[1]) ++differing;
  }
  const bool ok = inv.n_pairs > 0 && inv.ok() && pairs == inv.n_pairs && differing == pairs;
  return {ok, fmt("stripped: %zu/%zu identical queries, %zu/%zu identical scores; aware: %zu/%zu pairs with differing labels",
                  inv.identical_queries, inv.n_pairs, inv.identical_scores, inv.n_pairs, differing, pairs)};
}

// --- 6 and 7: trained vs zero-shot, time ablation ------------------------------------

struct TrainedAware {
  TrainResult result;
  EvalReport report;
  double seconds = 0.0;
};

TrainedAware train_aware(const Experiment& e) {
  const auto t0 = Clock::now();
  TrainResult r = train(e.train_aware, e.cfg.model, e.cfg.train);
  EvalReport rep = evaluate(r.model, e.test_aware, meta_for(e.cfg, e.cfg.serialization, e.cfg.model));
  return {std::move(r), rep, seconds_since(t0)};
}

Outcome trained_vs_zero_shot(const Experiment& e, const TrainedAware& atm) {
  const EvalReport zs = ablate_zero_shot(e.test_aware, meta_for(e.cfg, e.cfg.serialization, e.cfg.model));
  const double gap = atm.report.recall_at_1 - zs.recall_at_1;
  const auto& h = atm.result.loss_history;
  const bool decreasing = h.size() >= 3 && h[1] < h[0] && h[2] < h[1];
  const bool ok = e.train_aware.items.size() == 2000 && e.test_aware.items.size() == 400 && gap >= 0.10 &&
                  atm.report.recall_at_1 >= 0.90 && atm.seconds < 300.0;
  return {ok, fmt("%zu train / %zu test, ATM R@1 %.4f vs zero-shot %.4f (gap %+.4f), loss %s over 3 epochs, %.0fs",
                  e.train_aware.items.size(), e.test_aware.items.size(), atm.report.recall_at_1, zs.recall_at_1, gap,
                  decreasing ? "decreasing" : "NOT decreasing", atm.seconds)};
}

Outcome time_ablation(const Experiment& e, const TrainedAware& atm) {
  const auto t0 = Clock::now();
  const SerializationConfig ser = SerializationConfig::time_stripped();
  const PreparedSet train_s = e.ws->prepare(TaskKind::kTgmp, Split::kTrain, ser, e.cfg.features);
  const PreparedSet test_s = e.ws->prepare(TaskKind::kTgmp, Split::kTest, ser, e.cfg.features);
  const TrainResult stripped = train(train_s, e.cfg.model, e.cfg.train);
  const TimeAblationReport r =
      ablate_time_stripped(atm.result.model, e.test_aware, meta_for(e.cfg, e.cfg.serialization, e.cfg.model),
                           stripped.model, test_s, meta_for(e.cfg, ser, e.cfg.model));
  const double t = atm.seconds + seconds_since(t0);
  const double gap = r.time_aware.recall_at_1 - r.time_stripped.recall_at_1;
  const bool ok = gap >= 0.10 && r.stripped_differing.n > 0 &&
                  r.stripped_differing.recall_at_1 <= r.chance + 0.10 && r.invariance.ok() && t < 600.0;
  return {ok, fmt("aware R@1 %.4f vs stripped %.4f (gap %+.4f); stripped on %zu differing-pair items %.4f "
                  "(limit %.2f); %.0fs",
                  r.time_aware.recall_at_1, r.time_stripped.recall_at_1, gap, r.stripped_differing.n,
                  r.stripped_differing.recall_at_1, r.chance + 0.10, t)};
}

// --- 8: fusion comparison ------------------------------------------------------------

Outcome fusion_comparison() {
  const auto t0 = Clock::now();
  const Experiment e = make_experiment(true);
  const std::vector<FusionRow> rows = compare_fusions(e.train_aware, e.test_aware, e.cfg.model, e.cfg.train);
  const double t = seconds_since(t0);
  const auto find = [&](std::string_view head) -> const FusionRow* {
    for (const auto& r : rows) {
      if (r.head == head) return &r;
    }
    return nullptr;
  };
  const FusionRow* atm = find("atm");
  const FusionRow* mean = find("mean");
  const bool four = rows.size() == 4 && atm && mean && find("attention") && find("linear");
  std::string detail;
  for (const auto& r : rows) detail += r.head + " " + fmt("%.4f", r.recall_at_1) + ", ";
  const bool ok = four && atm->recall_at_1 >= mean->recall_at_1 + 0.05 && t < 900.0;
  return {ok, fmt("%zu rows: %s%.0fs", rows.size(), detail.c_str(), t)};
}

// --- 9: dataset shape ----------------------------------------------------------------

Outcome dataset_shape() {
  std::string detail;
  bool ok = true;
  struct Case {
    uint64_t seed;
    ModalityMode mode;
  };
  for (const Case c : {Case{7, ModalityMode::kBalanced}, Case{8, ModalityMode::kBalanced},
                       Case{9, ModalityMode::kBalanced}, Case{7, ModalityMode::kModalitySwitch}}) {
    GeneratorConfig gcfg;
    gcfg.modality_mode = c.mode;
    const GeneratedCorpus g = generate_synthetic_corpus(gcfg, c.seed);
    const Corpus& corpus = g.corpus;
    std::size_t later = 0, early = 0, grounded = 0, long_early = 0;
    for (const auto& e : corpus.episodes) {
      if (e.stage == Stage::kLater) {
        ++later;
        if (e.grounding_memory_id) ++grounded;
      } else {
        ++early;
        if (word_count(e.response) > kEarlyResponseMaxWords) ++long_early;
      }
    }
    const double stage_ratio = static_cast<double>(later) / static_cast<double>(early);
    const double ground_ratio = static_cast<double>(grounded) / static_cast<double>(early);

    std::size_t bad_sentinel = 0, missing_counterpart = 0;
    for (const auto& inst : build_tgmp(corpus, 20, c.seed)) {
      if (std::count(inst.candidates.begin(), inst.candidates.end(), std::string(kNoMemoryId)) != 1) ++bad_sentinel;
    }
    for (const auto& inst : build_tnrp(corpus, 20, c.seed)) {
      const Episode& e = corpus.episodes.at(inst.episode_id);
      if (e.counterpart_episode_id &&
          std::find(inst.candidate_episode_ids.begin(), inst.candidate_episode_ids.end(), *e.counterpart_episode_id) ==
              inst.candidate_episode_ids.end()) {
        ++missing_counterpart;
      }
    }
    const bool case_ok = std::abs(stage_ratio - 3.0) <= 0.3 && std::abs(ground_ratio - 2.0) <= 0.2 &&
                         long_early == 0 && bad_sentinel == 0 && missing_counterpart == 0 &&
                         validate_corpus(corpus).ok();
    ok = ok && case_ok;
    detail += fmt("seed %llu %s: %.3f:1, %.3f:1%s; ", static_cast<unsigned long long>(c.seed),
                  std::string(to_string(c.mode)).c_str(), stage_ratio, ground_ratio, case_ok ? "" : " (violations)");
  }
  return {ok, detail + "early <= 40 words, one sentinel, counterpart present"};
}

// --- 10: CLI determinism ---------------------------------------------------------------

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + CHRONORET_CLI_PATH + "\" " + args + " > /dev/null 2>&1";
  return std::system(cmd.c_str());
}

std::map<std::string, std::string> snapshot(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    const std::string rel = fs::relative(entry.path(), root).generic_string();
    // Wall-clock timings are the one output expected to vary.
    if (rel.rfind("logs/timing-", 0) == 0) continue;
    files[rel] = read_file(entry.path().string());
  }
  return files;
}

Outcome cli_determinism() {
  const fs::path base = fs::temp_directory_path() / "chronoret_acceptance_determinism";
  fs::remove_all(base);
  std::vector<std::map<std::string, std::string>> runs;
  for (const char* name : {"a", "b"}) {
    const std::string dir = (base / name).string();
    const std::vector<std::string> steps = {
        "gen-corpus --out " + dir + " --seed 7 --episodes 400",
        "--run " + dir + " build-tasks --C 20",
        "--run " + dir + " train --task tgmp --head atm",
        "--run " + dir + " eval --checkpoint tgmp-atm",
    };
    for (const auto& s : steps) {
      if (const int rc = run_cli(s); rc != 0) return {false, "'" + s + "' exited with status " + std::to_string(rc)};
    }
    runs.push_back(snapshot(base / name));
  }
  std::size_t differing = 0;
  std::string first;
  for (const auto& [rel, bytes] : runs[0]) {
    auto it = runs[1].find(rel);
    if (it == runs[1].end() || it->second != bytes) {
      if (differing++ == 0) first = rel;
    }
  }
  if (runs[1].size() != runs[0].size()) ++differing;
  fs::remove_all(base);
  return {differing == 0 && !runs[0].empty(),
          fmt("gen-corpus, build-tasks, train, eval twice: %zu files compared, %zu differ%s%s", runs[0].size(),
              differing, first.empty() ? "" : ", first ", first.c_str())};
}

}  // namespace
}  // namespace chronoret

int main() {
  using namespace chronoret;
  set_parallel_jobs(0);
  int failures = 0;
  auto report = [&](int id, const char* name, const std::function<Outcome()>& fn) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
    std::fflush(stdout);
  };

  report(1, "metric oracle equivalence", metric_oracle);
  report(2, "gradient correctness", gradient_check);
  report(3, "reduction identities", reduction_identities);
  report(4, "temporal label rule", label_rule_cases);

  std::optional<Experiment> balanced;
  std::optional<TrainedAware> atm;
  auto need_experiment = [&]() -> const Experiment& {
    if (!balanced) balanced.emplace(make_experiment(false));
    return *balanced;
  };
  auto need_atm = [&]() -> const TrainedAware& {
    if (!atm) atm.emplace(train_aware(need_experiment()));
    return *atm;
  };
  report(5, "time-stripped invariance", [&] { return time_invariance(need_experiment()); });
  report(6, "trained beats zero-shot", [&] { return trained_vs_zero_shot(need_experiment(), need_atm()); });
  report(7, "time-aware beats time-stripped", [&] { return time_ablation(need_experiment(), need_atm()); });
  balanced.reset();
  report(8, "fusion comparison", fusion_comparison);
  report(9, "dataset shape", dataset_shape);
  report(10, "CLI determinism", cli_determinism);

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
