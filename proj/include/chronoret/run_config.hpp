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

#ifndef CHRONORET_RUN_CONFIG_HPP_
#define CHRONORET_RUN_CONFIG_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "chronoret/featurize.hpp"
#include "chronoret/generator.hpp"
#include "chronoret/model.hpp"
#include "chronoret/serialize.hpp"
#include "chronoret/train.hpp"

namespace chronoret {

inline constexpr const char* kToolVersion = "0.1.0";

// Every setting a run can carry. Keys are validated against a fixed schema.
struct RunConfig {
  uint64_t seed = 7;
  std::string preset = "desk";
  int jobs = 0;
  GeneratorConfig generator;
  std::string llm_url;
  SerializationConfig serialization;
  FeatureConfig features;
  std::string text_embeddings;
  std::string image_embeddings;
  // Gates alone cannot reshape frozen hashed features, so runs train the
  // square projections too.
  ModelConfig model{.projections = true};
  TrainConfig train;
  TaskKind task = TaskKind::kTgmp;

  // Sets one key from its textual value; unknown keys throw ConfigError.
  void set(std::string_view key, std::string_view value);
  std::string get(std::string_view key) const;
  // Resolved "key = value" lines in schema order, plus the tool version.
  std::string to_text() const;
  void check() const;
};

std::vector<std::string> run_config_keys();

using KeyValues = std::vector<std::pair<std::string, std::string>>;

// Parses "key = value" lines; '#' starts a comment.
KeyValues parse_key_values(std::string_view text, const std::string& origin = "<memory>");
// "key=value" flag syntax.
std::pair<std::string, std::string> parse_assignment(std::string_view s);

// Defaults, then the preset (the last "preset" entry wins), then entries in order.
RunConfig resolve_run_config(const KeyValues& entries);

}  // namespace chronoret

#endif  // CHRONORET_RUN_CONFIG_HPP_
