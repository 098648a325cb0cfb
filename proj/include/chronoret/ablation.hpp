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

#ifndef CHRONORET_ABLATION_HPP_
#define CHRONORET_ABLATION_HPP_

#include <string>
#include <vector>

#include "chronoret/evaluate.hpp"
#include "chronoret/featurize.hpp"
#include "chronoret/model.hpp"
#include "chronoret/train.hpp"

namespace chronoret {

// Untrained mean fusion over the frozen features.
EvalReport ablate_zero_shot(const PreparedSet& set, const EvalMeta& meta, bool parallel = true);

struct PairInvariance {
  std::size_t n_pairs = 0;
  std::size_t identical_queries = 0;
  std::size_t identical_scores = 0;
  bool ok() const { return identical_queries == n_pairs && identical_scores == n_pairs; }
};

// Counterpart pairs (Later and Early sharing a pair key) compared bit for bit.
PairInvariance check_pair_invariance(const Model& m, const PreparedSet& set);

struct SubsetMetrics {
  std::size_t n = 0;
  double recall_at_1 = 0.0;
};

// R@1 over members of counterpart pairs whose two labels differ in kind.
SubsetMetrics differing_label_pairs(const Model& m, const PreparedSet& set, bool parallel = true);

struct TimeAblationReport {
  EvalReport time_aware;
  EvalReport time_stripped;
  PairInvariance invariance;
  SubsetMetrics aware_differing;
  SubsetMetrics stripped_differing;
  // A pair with identical inputs but different labels can be right at most once.
  double chance = 0.5;
};

TimeAblationReport ablate_time_stripped(const Model& aware, const PreparedSet& aware_set, const EvalMeta& aware_meta,
                                        const Model& stripped, const PreparedSet& stripped_set,
                                        const EvalMeta& stripped_meta, bool parallel = true);
std::string time_ablation_json(const TimeAblationReport& r);
std::string time_ablation_table(const TimeAblationReport& r);

struct FusionRow {
  std::string head;
  double recall_at_1 = 0.0;
  double mrr = 0.0;
  std::vector<double> loss_history;
};

// Trains and evaluates each head under one seed and config.
std::vector<FusionRow> compare_fusions(const PreparedSet& train_set, const PreparedSet& test_set,
                                       const ModelConfig& base, const TrainConfig& cfg, bool parallel = true);
std::string fusion_comparison_json(const std::vector<FusionRow>& rows);
std::string fusion_comparison_table(const std::vector<FusionRow>& rows);
std::vector<FusionRow> parse_fusion_comparison(const std::string& text);

}  // namespace chronoret

#endif  // CHRONORET_ABLATION_HPP_
