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

#ifndef CHRONORET_TASKS_HPP_
#define CHRONORET_TASKS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chronoret/corpus.hpp"

namespace chronoret {

enum class TaskKind { kTnrp, kTgmp };
enum class LabelKind { kGrounding, kNoMemory };

std::string_view to_string(TaskKind k);
std::string_view to_string(LabelKind k);
TaskKind parse_task_kind(std::string_view s);
LabelKind parse_label_kind(std::string_view s);

// A memory dated on the dialogue day counts as available.
LabelKind label_rule(const DateStamp& dialogue_time, const std::optional<DateStamp>& grounding_time);

struct TnrpInstance {
  std::string episode_id;
  std::vector<std::string> candidate_episode_ids;  // each candidate is that episode's response
  std::size_t label_index = 0;
  uint64_t builder_seed = 0;
};

struct TgmpInstance {
  std::string episode_id;
  std::vector<std::string> input_memory_ids;
  std::vector<std::string> candidates;  // memory ids; kNoMemoryId marks the sentinel
  std::size_t label_index = 0;
  LabelKind label_kind = LabelKind::kGrounding;
  uint64_t builder_seed = 0;
};

// Shared by both stages of a counterpart pair so the pair draws the same
// distractors in the same order.
uint64_t instance_seed(const Corpus& c, const Episode& e, uint64_t seed);

std::vector<TnrpInstance> build_tnrp(const Corpus& c, std::size_t n_candidates, uint64_t seed,
                                     std::optional<Split> split = std::nullopt);
std::vector<TgmpInstance> build_tgmp(const Corpus& c, std::size_t n_candidates, uint64_t seed,
                                     std::optional<Split> split = std::nullopt);

std::string tnrp_to_jsonl(const Corpus& c, const std::vector<TnrpInstance>& v);
std::string tgmp_to_jsonl(const Corpus& c, const std::vector<TgmpInstance>& v);
std::vector<TnrpInstance> load_tnrp(const std::string& path);
std::vector<TgmpInstance> load_tgmp(const std::string& path);

// Keeps the instances whose episode lies in the split.
template <typename Instance>
std::vector<Instance> filter_split(const Corpus& c, const std::vector<Instance>& v, Split s) {
  std::vector<Instance> out;
  for (const auto& inst : v) {
    if (c.episodes.at(inst.episode_id).split == s) out.push_back(inst);
  }
  return out;
}

}  // namespace chronoret

#endif  // CHRONORET_TASKS_HPP_
