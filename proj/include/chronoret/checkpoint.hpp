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

#ifndef CHRONORET_CHECKPOINT_HPP_
#define CHRONORET_CHECKPOINT_HPP_

#include <string>
#include <vector>

#include "chronoret/featurize.hpp"
#include "chronoret/model.hpp"
#include "chronoret/serialize.hpp"
#include "chronoret/tasks.hpp"
#include "chronoret/train.hpp"

namespace chronoret {

struct Checkpoint {
  TaskKind task = TaskKind::kTgmp;
  ModelConfig model;
  TrainConfig train;
  SerializationConfig serialization;
  FeatureConfig features;
  std::vector<double> params;
  std::vector<double> loss_history;
  int epoch = 0;

  std::string fingerprint() const;
  Model build_model() const { return Model(model, params); }
};

Checkpoint make_checkpoint(TaskKind task, const TrainResult& r, const TrainConfig& train,
                           const SerializationConfig& ser, const FeatureConfig& features);

std::string checkpoint_to_json(const Checkpoint& c);
Checkpoint parse_checkpoint(const std::string& text, const std::string& origin = "<memory>");
Checkpoint load_checkpoint(const std::string& path);
void save_checkpoint(const Checkpoint& c, const std::string& path);

}  // namespace chronoret

#endif  // CHRONORET_CHECKPOINT_HPP_
