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

#ifndef CHRONORET_EVALUATE_HPP_
#define CHRONORET_EVALUATE_HPP_

#include <string>
#include <vector>

#include "chronoret/featurize.hpp"
#include "chronoret/model.hpp"

namespace chronoret {

struct StageMetrics {
  std::size_t n = 0;
  double recall_at_1 = 0.0;
  double mrr = 0.0;
};

struct EvalReport {
  TaskKind task = TaskKind::kTgmp;
  std::string head;
  std::string input_setting;
  bool zero_shot = false;
  std::size_t n_instances = 0;
  double recall_at_1 = 0.0;
  double mrr = 0.0;
  StageMetrics later;
  StageMetrics early;
  std::string model_fingerprint;
  std::string serialization_fingerprint;
  std::string feature_fingerprint;
};

struct EvalMeta {
  std::string model_fingerprint;
  std::string serialization_fingerprint;
  std::string feature_fingerprint;
  std::string input_setting = "dialogue+memories";
  bool zero_shot = false;
};

// Pessimistic ranks of every instance's label.
std::vector<std::size_t> label_ranks(const Model& m, const PreparedSet& set, bool parallel = true);

EvalReport evaluate(const Model& m, const PreparedSet& set, const EvalMeta& meta, bool parallel = true);
EvalReport summarize(TaskKind task, const std::vector<PreparedInstance>& items,
                     const std::vector<std::size_t>& ranks);

std::string eval_report_json(const EvalReport& r);
EvalReport parse_eval_report(const std::string& text);
std::string eval_report_table(const EvalReport& r);

}  // namespace chronoret

#endif  // CHRONORET_EVALUATE_HPP_
