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

#include "chronoret/ablation.hpp"

#include <cstdio>
#include <map>

#include "chronoret/error.hpp"
#include "chronoret/kernels.hpp"
#include "chronoret/metrics.hpp"
#include "json.hpp"

namespace chronoret {

using nlohmann::json;

EvalReport ablate_zero_shot(const PreparedSet& set, const EvalMeta& meta, bool parallel) {
  ModelConfig cfg;
  cfg.head = HeadKind::kMean;
  cfg.dim = set.bank.text_dim();
  cfg.text_in = set.bank.text_dim();
  cfg.vision_in = set.bank.vision_dim();
  const Model m(cfg, 0);
  EvalMeta zs = meta;
  zs.zero_shot = true;
  zs.model_fingerprint = cfg.fingerprint();
  return evaluate(m, set, zs, parallel);
}

namespace {

// Index pairs (later, early) grouped by pair key, in item order.
std::vector<std::pair<std::size_t, std::size_t>> counterpart_pairs(const PreparedSet& set) {
  std::map<std::string, std::pair<long, long>> groups;
  std::vector<std::string> order;
  for (std::size_t i = 0; i < set.items.size(); ++i) {
    auto [it, fresh] = groups.try_emplace(set.items[i].pair_key, std::pair<long, long>{-1, -1});
    if (fresh) order.push_back(set.items[i].pair_key);
    (set.items[i].stage == Stage::kLater ? it->second.first : it->second.second) = static_cast<long>(i);
  }
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& key : order) {
    const auto& g = groups.at(key);
    if (g.first >= 0 && g.second >= 0) out.emplace_back(g.first, g.second);
  }
  return out;
}

}  // namespace

PairInvariance check_pair_invariance(const Model& m, const PreparedSet& set) {
  PairInvariance r;
  Scratch s;
  for (auto [a, b] : counterpart_pairs(set)) {
    ++r.n_pairs;
    if (represent_query(m, set, set.items[a]) == represent_query(m, set, set.items[b])) ++r.identical_queries;
    if (instance_scores(m, set, set.items[a], s) == instance_scores(m, set, set.items[b], s)) ++r.identical_scores;
  }
  return r;
}

SubsetMetrics differing_label_pairs(const Model& m, const PreparedSet& set, bool parallel) {
  const auto ranks = label_ranks(m, set, parallel);
  std::vector<std::size_t> subset;
  for (auto [a, b] : counterpart_pairs(set)) {
    if (set.items[a].label_kind == set.items[b].label_kind) continue;
    subset.push_back(ranks[a]);
    subset.push_back(ranks[b]);
  }
  SubsetMetrics r;
  r.n = subset.size();
  if (!subset.empty()) r.recall_at_1 = recall_at_1(subset);
  return r;
}

TimeAblationReport ablate_time_stripped(const Model& aware, const PreparedSet& aware_set, const EvalMeta& aware_meta,
                                        const Model& stripped, const PreparedSet& stripped_set,
                                        const EvalMeta& stripped_meta, bool parallel) {
  TimeAblationReport r;
  r.time_aware = evaluate(aware, aware_set, aware_meta, parallel);
  r.time_stripped = evaluate(stripped, stripped_set, stripped_meta, parallel);
  r.invariance = check_pair_invariance(stripped, stripped_set);
  r.aware_differing = differing_label_pairs(aware, aware_set, parallel);
  r.stripped_differing = differing_label_pairs(stripped, stripped_set, parallel);
  return r;
}

std::string time_ablation_json(const TimeAblationReport& r) {
  auto subset = [](const SubsetMetrics& s) { return json{{"n", s.n}, {"recall_at_1", s.recall_at_1}}; };
  json j = {{"time_aware", json::parse(eval_report_json(r.time_aware))},
            {"time_stripped", json::parse(eval_report_json(r.time_stripped))},
            {"pair_invariance",
             {{"n_pairs", r.invariance.n_pairs},
              {"identical_queries", r.invariance.identical_queries},
              {"identical_scores", r.invariance.identical_scores},
              {"ok", r.invariance.ok()}}},
            {"differing_label_pairs",
             {{"time_aware", subset(r.aware_differing)},
              {"time_stripped", subset(r.stripped_differing)},
              {"chance", r.chance}}}};
  return j.dump(2) + "\n";
}

std::string time_ablation_table(const TimeAblationReport& r) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-14s %8s %8s %12s\n", "serialization", "R@1", "MRR", "diff-pairs");
  out += buf;
  std::snprintf(buf, sizeof buf, "%-14s %8.2f %8.2f %12.2f\n", "time-aware", 100.0 * r.time_aware.recall_at_1,
                100.0 * r.time_aware.mrr, 100.0 * r.aware_differing.recall_at_1);
  out += buf;
  std::snprintf(buf, sizeof buf, "%-14s %8.2f %8.2f %12.2f\n", "time-stripped", 100.0 * r.time_stripped.recall_at_1,
                100.0 * r.time_stripped.mrr, 100.0 * r.stripped_differing.recall_at_1);
  out += buf;
  std::snprintf(buf, sizeof buf, "pairs %zu, identical queries %zu, identical scores %zu\n", r.invariance.n_pairs,
                r.invariance.identical_queries, r.invariance.identical_scores);
  out += buf;
  return out;
}

std::vector<FusionRow> compare_fusions(const PreparedSet& train_set, const PreparedSet& test_set,
                                       const ModelConfig& base, const TrainConfig& cfg, bool parallel) {
  std::vector<FusionRow> rows;
  for (HeadKind head : {HeadKind::kAtm, HeadKind::kAttention, HeadKind::kLinear, HeadKind::kMean}) {
    ModelConfig mc = base;
    mc.head = head;
    const TrainResult tr = train(train_set, mc, cfg, {}, parallel);
    const EvalReport rep = evaluate(tr.model, test_set, EvalMeta{}, parallel);
    rows.push_back(FusionRow{std::string(to_string(head)), rep.recall_at_1, rep.mrr, tr.loss_history});
  }
  return rows;
}

std::string fusion_comparison_json(const std::vector<FusionRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"head", r.head}, {"recall_at_1", r.recall_at_1}, {"mrr", r.mrr}, {"loss_history", r.loss_history}});
  }
  return json{{"rows", arr}}.dump(2) + "\n";
}

std::vector<FusionRow> parse_fusion_comparison(const std::string& text) {
  try {
    std::vector<FusionRow> rows;
    const json doc = json::parse(text);
    for (const auto& r : doc.at("rows")) {
      rows.push_back(FusionRow{r.at("head").get<std::string>(), r.at("recall_at_1").get<double>(),
                               r.at("mrr").get<double>(), r.at("loss_history").get<std::vector<double>>()});
    }
    return rows;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed fusion comparison: ") + e.what());
  }
}

std::string fusion_comparison_table(const std::vector<FusionRow>& rows) {
  std::string out;
  char buf[128];
  std::snprintf(buf, sizeof buf, "%-10s %8s %8s\n", "fusion", "R@1", "MRR");
  out += buf;
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%-10s %8.2f %8.2f\n", r.head.c_str(), 100.0 * r.recall_at_1, 100.0 * r.mrr);
    out += buf;
  }
  return out;
}

}  // namespace chronoret
