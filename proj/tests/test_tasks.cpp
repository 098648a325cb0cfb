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

#include <algorithm>
#include <filesystem>
#include <set>

#include "chronoret/error.hpp"
#include "chronoret/fs_util.hpp"
#include "chronoret/generator.hpp"
#include "chronoret/tasks.hpp"
#include "doctest.h"

namespace chronoret {
namespace {

const Corpus& shared_corpus() {
  static const Corpus corpus = [] {
    GeneratorConfig cfg;
    cfg.n_episodes = 400;
    return generate_synthetic_corpus(cfg, 7).corpus;
  }();
  return corpus;
}

TEST_CASE("label rule") {
  CHECK(label_rule({2018, 1, 1}, DateStamp{2016, 5, 5}) == LabelKind::kGrounding);
  CHECK(label_rule({2016, 5, 5}, DateStamp{2018, 1, 1}) == LabelKind::kNoMemory);
  CHECK(label_rule({2018, 1, 1}, std::nullopt) == LabelKind::kNoMemory);
  CHECK(label_rule({2018, 1, 1}, DateStamp{2018, 1, 1}) == LabelKind::kGrounding);
}

TEST_CASE("TNRP candidates hold the label and the counterpart response") {
  const Corpus& c = shared_corpus();
  const auto tnrp = build_tnrp(c, 100, 7);
  CHECK(tnrp.size() == c.episodes.size());
  for (const auto& inst : tnrp) {
    const Episode& e = c.episodes.at(inst.episode_id);
    REQUIRE(inst.candidate_episode_ids.size() == 100);
    REQUIRE(inst.label_index < 100);
    CHECK(inst.candidate_episode_ids[inst.label_index] == e.id);
    CHECK(c.episodes.at(inst.candidate_episode_ids[inst.label_index]).response == e.response);
    const std::set<std::string> unique(inst.candidate_episode_ids.begin(), inst.candidate_episode_ids.end());
    CHECK(unique.size() == 100);
    std::size_t same_dialogue = 0;
    for (const auto& id : inst.candidate_episode_ids) {
      if (id == e.id) continue;
      if (e.counterpart_episode_id && id == *e.counterpart_episode_id) continue;
      if (c.episodes.at(id).dialogue_id == e.dialogue_id) ++same_dialogue;
    }
    CHECK(same_dialogue == 0);
    if (e.counterpart_episode_id) {
      CHECK(unique.count(*e.counterpart_episode_id) == 1);
    }
  }
}

TEST_CASE("TNRP without a counterpart uses only random distractors") {
  const Corpus& c = shared_corpus();
  const auto tnrp = build_tnrp(c, 10, 7);
  std::size_t checked = 0;
  for (const auto& inst : tnrp) {
    const Episode& e = c.episodes.at(inst.episode_id);
    if (e.counterpart_episode_id) continue;
    ++checked;
    CHECK(inst.candidate_episode_ids.size() == 10);
    for (std::size_t j = 0; j < 10; ++j) {
      if (j == inst.label_index) continue;
      CHECK(c.episodes.at(inst.candidate_episode_ids[j]).dialogue_id != e.dialogue_id);
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("TGMP composition and labels") {
  const Corpus& c = shared_corpus();
  const auto tgmp = build_tgmp(c, 20, 7);
  CHECK(tgmp.size() == c.episodes.size());
  std::size_t early = 0;
  for (const auto& inst : tgmp) {
    const Episode& e = c.episodes.at(inst.episode_id);
    REQUIRE(inst.candidates.size() == 20);
    REQUIRE(inst.label_index < 20);
    CHECK(std::count(inst.candidates.begin(), inst.candidates.end(), std::string(kNoMemoryId)) == 1);
    const MemoryEntry* topical = c.topical_memory(e);
    const std::optional<DateStamp> gt =
        e.grounding_memory_id ? std::optional(c.memories.at(*e.grounding_memory_id).time) : std::nullopt;
    CHECK(inst.label_kind == label_rule(c.dialogue_of(e).time, gt));
    if (inst.label_kind == LabelKind::kNoMemory) {
      CHECK(inst.candidates[inst.label_index] == kNoMemoryId);
    } else {
      CHECK(inst.candidates[inst.label_index] == *e.grounding_memory_id);
    }
    for (const auto& id : inst.candidates) {
      if (id == kNoMemoryId || (topical != nullptr && id == topical->id)) continue;
      CHECK(c.memories.at(id).speaker_id != e.responder_id);
    }
    if (e.grounding_memory_id) {
      CHECK(std::find(inst.input_memory_ids.begin(), inst.input_memory_ids.end(), *e.grounding_memory_id) ==
            inst.input_memory_ids.end());
    }
    if (e.stage == Stage::kEarly) {
      ++early;
      CHECK(inst.label_kind == LabelKind::kNoMemory);
      REQUIRE(topical != nullptr);
      CHECK(topical->time > c.dialogue_of(e).time);
      CHECK(std::find(inst.candidates.begin(), inst.candidates.end(), topical->id) != inst.candidates.end());
    }
  }
  CHECK(early > 0);
}

TEST_CASE("counterpart pairs get different TGMP labels") {
  const Corpus& c = shared_corpus();
  const auto tgmp = build_tgmp(c, 20, 7);
  std::map<std::string, LabelKind> by_id;
  for (const auto& inst : tgmp) by_id[inst.episode_id] = inst.label_kind;
  std::size_t differing = 0, pairs = 0;
  for (const auto& e : c.episodes) {
    if (e.stage != Stage::kEarly || !e.counterpart_episode_id) continue;
    ++pairs;
    if (by_id.at(e.id) != by_id.at(*e.counterpart_episode_id)) ++differing;
  }
  CHECK(pairs > 0);
  CHECK(differing == pairs);
}

TEST_CASE("builders are deterministic and split-aware") {
  const Corpus& c = shared_corpus();
  CHECK(tgmp_to_jsonl(c, build_tgmp(c, 20, 7)) == tgmp_to_jsonl(c, build_tgmp(c, 20, 7)));
  CHECK(tnrp_to_jsonl(c, build_tnrp(c, 20, 7)) == tnrp_to_jsonl(c, build_tnrp(c, 20, 7)));
  CHECK(tgmp_to_jsonl(c, build_tgmp(c, 20, 7)) != tgmp_to_jsonl(c, build_tgmp(c, 20, 8)));

  const auto test_only = build_tgmp(c, 20, 7, Split::kTest);
  CHECK_FALSE(test_only.empty());
  for (const auto& inst : test_only) CHECK(c.episodes.at(inst.episode_id).split == Split::kTest);
  CHECK(filter_split(c, build_tgmp(c, 20, 7), Split::kTest).size() == test_only.size());
}

TEST_CASE("task files round-trip") {
  const Corpus& c = shared_corpus();
  const auto dir = std::filesystem::temp_directory_path() / "chronoret_tasks_test";
  std::filesystem::create_directories(dir);
  const auto tgmp = build_tgmp(c, 20, 7);
  const auto tnrp = build_tnrp(c, 20, 7);
  write_file_atomic((dir / "tgmp.jsonl").string(), tgmp_to_jsonl(c, tgmp));
  write_file_atomic((dir / "tnrp.jsonl").string(), tnrp_to_jsonl(c, tnrp));
  CHECK(tgmp_to_jsonl(c, load_tgmp((dir / "tgmp.jsonl").string())) == tgmp_to_jsonl(c, tgmp));
  CHECK(tnrp_to_jsonl(c, load_tnrp((dir / "tnrp.jsonl").string())) == tnrp_to_jsonl(c, tnrp));
  CHECK_THROWS_AS(load_tnrp((dir / "tgmp.jsonl").string()), ParseError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("too few candidates or too small a corpus is rejected") {
  const Corpus& c = shared_corpus();
  CHECK_THROWS_AS(build_tnrp(c, 1, 7), ConfigError);
  CHECK_THROWS_AS(build_tgmp(c, 2, 7), ConfigError);
  CHECK_THROWS_AS(build_tnrp(c, 100000, 7), ConfigError);
}

}  // namespace
}  // namespace chronoret
