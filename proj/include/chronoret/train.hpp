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

#ifndef CHRONORET_TRAIN_HPP_
#define CHRONORET_TRAIN_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "chronoret/featurize.hpp"
#include "chronoret/model.hpp"

namespace chronoret {

struct TrainConfig {
  int epochs = 5;
  int batch_size = 8;
  double learning_rate = 1e-3;
  double weight_decay = 0.05;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-8;
  uint64_t seed = 7;
  std::size_t n_candidates = 20;
  std::size_t max_memories = 20;

  static TrainConfig desk();
  static TrainConfig paper();
  static TrainConfig preset(std::string_view name);
  void check() const;
  std::string fingerprint() const;
};

// Receives one line-delimited record per optimizer step.
using TrainLogSink = std::function<void(const std::string& line)>;

struct TrainResult {
  Model model;
  std::vector<double> loss_history;  // epoch means
  int epochs_run = 0;
};

// Adam with decoupled weight decay over every model parameter.
TrainResult train(const PreparedSet& set, const ModelConfig& model_cfg, const TrainConfig& cfg,
                  const TrainLogSink& log = {}, bool parallel = true);

}  // namespace chronoret

#endif  // CHRONORET_TRAIN_HPP_
