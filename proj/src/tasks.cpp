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

#include "chronoret/tasks.hpp"

#include <set>
#include <sstream>

#include "chronoret/error.hpp"
#include "chronoret/fs_util.hpp"
#include "chronoret/hash.hpp"
#include "chronoret/rng.hpp"
#include "json.hpp"

namespace chronoret {
namespace {

using nlohmann::json;

const Episode* counterpart_of(const Corpus& c, const Episode& e) {
  return e.counterpart_episode_id ? c.episodes.find(*e.counterpart_episode_id) : nullptr;
}

// Places the label candidate with the rest under a seeded permutation.
template <typename T>
std::size_t permute(Rng& rng, std::vector<T>& slots, std::size_t label_slot) {
  std::vector<std::size_t> perm(slots.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  rng.shuffle(perm);
  std::vector<T> out(slots.size());
  std::size_t label = 0;
  for (std::size_t pos = 0; pos < perm.size(); ++pos) {
    out[pos] = slots[perm[pos]];
    if (perm[pos] == label_slot) label = pos;
  }
  slots = std::move(out);
  return label;
}

[[noreturn]] void too_small(const char* task, std::size_t have, std::size_t C) {
  throw ConfigError(std::string(task) + ": corpus too small for C=" + std::to_string(C) + " (only " +
                    std::to_string(have) + " usable candidates); try a lower C such as " +
                    std::to_string(std::max<std::size_t>(2, have / 2)));
}

std::vector<std::string> strings(const json& j, const char* key) {
  std::vector<std::string> out;
  for (const auto& v : j.at(key)) out.push_back(v.get<std::string>());
  return out;
}

template <typename F>
void for_each_line(const std::string& path, F f) {
  std::istringstream in(read_file(path));
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      f(json::parse(line));
    } catch (const json::exception& ex) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": " + ex.what());
    }
  }
}

uint64_t parse_seed(const json& j) { return std::stoull(j.at("seed").get<std::string>()); }

}  // namespace

std::string_view to_string(TaskKind k) { return k == TaskKind::kTnrp ? "tnrp" : "tgmp"; }
std::string_view to_string(LabelKind k) { return k == LabelKind::kGrounding ? "grounding" : "no_memory"; }

TaskKind parse_task_kind(std::string_view s) {
  if (s == "tnrp") return TaskKind::kTnrp;
  if (s == "tgmp") return TaskKind::kTgmp;
  throw ConfigError("unknown task '" + std::string(s) + "'");
}

LabelKind parse_label_kind(std::string_view s) {
  if (s == "grounding") return LabelKind::kGrounding;
  if (s == "no_memory") return LabelKind::kNoMemory;
  throw ParseError("unknown label kind '" + std::string(s) + "'");
}

LabelKind label_rule(const DateStamp& dialogue_time, const std::optional<DateStamp>& grounding_time) {
  return grounding_time && *grounding_time <= dialogue_time ? LabelKind::kGrounding : LabelKind::kNoMemory;
}

uint64_t instance_seed(const Corpus& c, const Episode& e, uint64_t seed) {
  std::string root = e.id;
  if (const Episode* other = counterpart_of(c, e)) {
    if (other->stage == Stage::kLater && e.stage == Stage::kEarly) {
      root = other->id;
    } else if (other->stage == e.stage && other->id < root) {
      root = other->id;
    }
  }
  return hash_combine(seed, fnv1a64(root));
}

std::vector<TnrpInstance> build_tnrp(const Corpus& c, std::size_t n_candidates, uint64_t seed,
                                     std::optional<Split> split) {
  if (n_candidates < 2) throw ConfigError("TNRP needs C >= 2");
  std::vector<TnrpInstance> out;
  const auto& eps = c.episodes.items();
  for (const Episode& e : eps) {
    if (split && e.split != *split) continue;
    const Episode* other = counterpart_of(c, e);
    Rng rng(instance_seed(c, e, seed));

    // Canonical slot order for a pair: Later response, then Early response.
    std::vector<std::string> slots;
    std::size_t label_slot = 0;
    if (other != nullptr) {
      const bool own_first = e.stage == Stage::kLater || other->stage == Stage::kEarly;
      slots = own_first ? std::vector<std::string>{e.id, other->id} : std::vector<std::string>{other->id, e.id};
      label_slot = own_first ? 0 : 1;
    } else {
      slots = {e.id};
    }
    std::set<std::string> blocked_dialogues{e.dialogue_id};
    std::set<std::string> seen_text{e.response};
    if (other != nullptr) {
      blocked_dialogues.insert(other->dialogue_id);
      seen_text.insert(other->response);
    }
    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < eps.size(); ++i) {
      if (!blocked_dialogues.count(eps[i].dialogue_id)) eligible.push_back(i);
    }
    rng.shuffle(eligible);
    for (std::size_t i : eligible) {
      if (slots.size() == n_candidates) break;
      if (seen_text.insert(eps[i].response).second) slots.push_back(eps[i].id);
    }
    if (slots.size() < n_candidates) too_small("tnrp", slots.size(), n_candidates);

    TnrpInstance inst;
    inst.episode_id = e.id;
    inst.label_index = permute(rng, slots, label_slot);
    inst.candidate_episode_ids = std::move(slots);
    inst.builder_seed = seed;
    out.push_back(std::move(inst));
  }
  return out;
}

std::vector<TgmpInstance> build_tgmp(const Corpus& c, std::size_t n_candidates, uint64_t seed,
                                     std::optional<Split> split) {
  if (n_candidates < 3) throw ConfigError("TGMP needs C >= 3");
  std::vector<TgmpInstance> out;
  const auto& mems = c.memories.items();
  for (const Episode& e : c.episodes) {
    if (split && e.split != *split) continue;
    const Dialogue& d = c.dialogue_of(e);
    const MemoryEntry* topical = c.topical_memory(e);
    Rng rng(instance_seed(c, e, seed));

    std::optional<DateStamp> grounding_time;
    if (e.grounding_memory_id) grounding_time = c.memories.at(*e.grounding_memory_id).time;
    const LabelKind kind = label_rule(d.time, grounding_time);

    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < mems.size(); ++i) {
      if (mems[i].speaker_id != e.responder_id && !mems[i].is_sentinel()) eligible.push_back(i);
    }
    const std::size_t n_random = n_candidates - (topical ? 2 : 1);
    if (eligible.size() < n_random) too_small("tgmp", eligible.size() + 2, n_candidates);
    rng.shuffle(eligible);

    // Slot 0 holds the topical memory (or one extra distractor), slot 1 the sentinel.
    std::vector<std::string> slots;
    std::size_t next = 0;
    slots.push_back(topical ? topical->id : mems[eligible[next++]].id);
    slots.push_back(std::string(kNoMemoryId));
    while (slots.size() < n_candidates) slots.push_back(mems[eligible[next++]].id);

    TgmpInstance inst;
    inst.episode_id = e.id;
    for (const auto& mid : e.memory_ids) {
      if (!topical || mid != topical->id) inst.input_memory_ids.push_back(mid);
    }
    const std::size_t label_slot = (kind == LabelKind::kGrounding && topical) ? 0 : 1;
    inst.label_kind = label_slot == 0 ? LabelKind::kGrounding : LabelKind::kNoMemory;
    inst.label_index = permute(rng, slots, label_slot);
    inst.candidates = std::move(slots);
    inst.builder_seed = seed;
    out.push_back(std::move(inst));
  }
  return out;
}

std::string tnrp_to_jsonl(const Corpus& c, const std::vector<TnrpInstance>& v) {
  std::string out;
  for (const auto& inst : v) {
    const Episode& e = c.episodes.at(inst.episode_id);
    json j{{"task", "tnrp"},
           {"episode_id", inst.episode_id},
           {"candidates", inst.candidate_episode_ids},
           {"label_index", inst.label_index},
           {"stage", std::string(to_string(e.stage))},
           {"split", std::string(to_string(e.split))},
           {"seed", std::to_string(inst.builder_seed)}};
    out += j.dump() + "\n";
  }
  return out;
}

std::string tgmp_to_jsonl(const Corpus& c, const std::vector<TgmpInstance>& v) {
  std::string out;
  for (const auto& inst : v) {
    const Episode& e = c.episodes.at(inst.episode_id);
    json j{{"task", "tgmp"},
           {"episode_id", inst.episode_id},
           {"input_memory_ids", inst.input_memory_ids},
           {"candidates", inst.candidates},
           {"label_index", inst.label_index},
           {"label_kind", std::string(to_string(inst.label_kind))},
           {"stage", std::string(to_string(e.stage))},
           {"split", std::string(to_string(e.split))},
           {"seed", std::to_string(inst.builder_seed)}};
    out += j.dump() + "\n";
  }
  return out;
}

std::vector<TnrpInstance> load_tnrp(const std::string& path) {
  std::vector<TnrpInstance> out;
  for_each_line(path, [&](const json& j) {
    if (j.at("task").get<std::string>() != "tnrp") throw ParseError(path + ": not a TNRP task file");
    TnrpInstance inst;
    inst.episode_id = j.at("episode_id").get<std::string>();
    inst.candidate_episode_ids = strings(j, "candidates");
    inst.label_index = j.at("label_index").get<std::size_t>();
    inst.builder_seed = parse_seed(j);
    if (inst.label_index >= inst.candidate_episode_ids.size()) throw ParseError(path + ": label_index out of range");
    out.push_back(std::move(inst));
  });
  return out;
}

std::vector<TgmpInstance> load_tgmp(const std::string& path) {
  std::vector<TgmpInstance> out;
  for_each_line(path, [&](const json& j) {
    if (j.at("task").get<std::string>() != "tgmp") throw ParseError(path + ": not a TGMP task file");
    TgmpInstance inst;
    inst.episode_id = j.at("episode_id").get<std::string>();
    inst.input_memory_ids = strings(j, "input_memory_ids");
    inst.candidates = strings(j, "candidates");
    inst.label_index = j.at("label_index").get<std::size_t>();
    inst.label_kind = parse_label_kind(j.at("label_kind").get<std::string>());
    inst.builder_seed = parse_seed(j);
    if (inst.label_index >= inst.candidates.size()) throw ParseError(path + ": label_index out of range");
    out.push_back(std::move(inst));
  });
  return out;
}

}  // namespace chronoret
