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

#include "chronoret/evaluate.hpp"

#include <cstdio>

#include "chronoret/error.hpp"
#include "chronoret/kernels.hpp"
#include "chronoret/metrics.hpp"
#include "json.hpp"

namespace chronoret {

using nlohmann::json;

std::vector<std::size_t> label_ranks(const Model& m, const PreparedSet& set, bool parallel) {
  const auto scores = parallel ? score_instances_parallel(m, set) : score_instances_serial(m, set);
  std::vector<std::size_t> ranks(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) ranks[i] = rank_of_label(scores[i], set.items[i].label);
  return ranks;
}

namespace {

StageMetrics stage_metrics(const std::vector<std::size_t>& ranks) {
  StageMetrics s;
  s.n = ranks.size();
  if (!ranks.empty()) {
    s.recall_at_1 = recall_at_1(ranks);
    s.mrr = mean_reciprocal_rank(ranks);
  }
  return s;
}

json stage_json(const StageMetrics& s) { return {{"n", s.n}, {"recall_at_1", s.recall_at_1}, {"mrr", s.mrr}}; }

StageMetrics stage_from(const json& j) {
  return {j.at("n").get<std::size_t>(), j.at("recall_at_1").get<double>(), j.at("mrr").get<double>()};
}

}  // namespace

EvalReport summarize(TaskKind task, const std::vector<PreparedInstance>& items,
                     const std::vector<std::size_t>& ranks) {
  if (items.empty()) throw ConfigError("no instances to evaluate");
  EvalReport r;
  r.task = task;
  r.n_instances = items.size();
  r.recall_at_1 = recall_at_1(ranks);
  r.mrr = mean_reciprocal_rank(ranks);
  std::vector<std::size_t> later, early;
  for (std::size_t i = 0; i < items.size(); ++i) {
    (items[i].stage == Stage::kLater ? later : early).push_back(ranks[i]);
  }
  r.later = stage_metrics(later);
  r.early = stage_metrics(early);
  return r;
}

EvalReport evaluate(const Model& m, const PreparedSet& set, const EvalMeta& meta, bool parallel) {
  EvalReport r = summarize(set.task, set.items, label_ranks(m, set, parallel));
  r.head = std::string(to_string(m.config().head));
  r.input_setting = meta.input_setting;
  r.zero_shot = meta.zero_shot;
  r.model_fingerprint = meta.model_fingerprint;
  r.serialization_fingerprint = meta.serialization_fingerprint;
  r.feature_fingerprint = meta.feature_fingerprint;
  return r;
}

std::string eval_report_json(const EvalReport& r) {
  json j = {{"task", to_string(r.task)},
            {"head", r.head},
            {"input_setting", r.input_setting},
            {"zero_shot", r.zero_shot},
            {"n_instances", r.n_instances},
            {"recall_at_1", r.recall_at_1},
            {"mrr", r.mrr},
            {"stages", {{"later", stage_json(r.later)}, {"early", stage_json(r.early)}}},
            {"fingerprints",
             {{"model", r.model_fingerprint},
              {"serialization", r.serialization_fingerprint},
              {"features", r.feature_fingerprint}}}};
  return j.dump(2) + "\n";
}

EvalReport parse_eval_report(const std::string& text) {
  try {
    const json j = json::parse(text);
    EvalReport r;
    r.task = parse_task_kind(j.at("task").get<std::string>());
    r.head = j.at("head").get<std::string>();
    r.input_setting = j.at("input_setting").get<std::string>();
    r.zero_shot = j.at("zero_shot").get<bool>();
    r.n_instances = j.at("n_instances").get<std::size_t>();
    r.recall_at_1 = j.at("recall_at_1").get<double>();
    r.mrr = j.at("mrr").get<double>();
    r.later = stage_from(j.at("stages").at("later"));
    r.early = stage_from(j.at("stages").at("early"));
    const json& f = j.at("fingerprints");
    r.model_fingerprint = f.at("model").get<std::string>();
    r.serialization_fingerprint = f.at("serialization").get<std::string>();
    r.feature_fingerprint = f.at("features").get<std::string>();
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed eval report: ") + e.what());
  }
}

std::string eval_report_table(const EvalReport& r) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "task %s  head %s  input %s%s\n", std::string(to_string(r.task)).c_str(),
                r.head.c_str(), r.input_setting.c_str(), r.zero_shot ? "  (zero-shot)" : "");
  out += buf;
  std::snprintf(buf, sizeof buf, "%-8s %8s %8s %8s\n", "split", "n", "R@1", "MRR");
  out += buf;
  auto row = [&](const char* name, std::size_t n, double r1, double mrr) {
    std::snprintf(buf, sizeof buf, "%-8s %8zu %8.2f %8.2f\n", name, n, 100.0 * r1, 100.0 * mrr);
    out += buf;
  };
  row("all", r.n_instances, r.recall_at_1, r.mrr);
  row("later", r.later.n, r.later.recall_at_1, r.later.mrr);
  row("early", r.early.n, r.early.recall_at_1, r.early.mrr);
  return out;
}

}  // namespace chronoret
