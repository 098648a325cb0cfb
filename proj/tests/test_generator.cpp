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
#include <string>

#include "chronoret/corpus.hpp"
#include "chronoret/error.hpp"
#include "chronoret/generator.hpp"
#include "chronoret/image.hpp"
#include "chronoret/text_encoder.hpp"
#include "doctest.h"

namespace chronoret {
namespace {

GeneratorConfig small_config(int episodes = 400) {
  GeneratorConfig cfg;
  cfg.n_episodes = episodes;
  return cfg;
}

TEST_CASE("generation is a pure function of config and seed") {
  const GeneratorConfig cfg = small_config(200);
  const auto a = generate_synthetic_corpus(cfg, 7);
  const auto b = generate_synthetic_corpus(cfg, 7);
  CHECK(corpus_to_jsonl(a.corpus) == corpus_to_jsonl(b.corpus));
  CHECK(a.images.images() == b.images.images());
  const auto c = generate_synthetic_corpus(cfg, 8);
  CHECK(corpus_to_jsonl(a.corpus) != corpus_to_jsonl(c.corpus));
}

TEST_CASE("a generated corpus validates and hits the stage ratios") {
  const auto g = generate_synthetic_corpus(small_config(), 7);
  const ValidationReport r = validate_corpus(g.corpus);
  CHECK(r.ok());
  CHECK(r.n_episodes == 400);
  CHECK(r.n_later >= 270);
  CHECK(r.n_later <= 330);
  CHECK(r.n_early >= 70);
  CHECK(r.n_early <= 130);
  const double grounded_ratio = static_cast<double>(r.n_later_grounded) / static_cast<double>(r.n_early);
  CHECK(grounded_ratio >= 1.8);
  CHECK(grounded_ratio <= 2.2);
}

TEST_CASE("early episodes are short, ungrounded and paired with a later dialogue") {
  const auto g = generate_synthetic_corpus(small_config(), 11);
  const Corpus& c = g.corpus;
  std::size_t n_early = 0;
  for (const auto& e : c.episodes) {
    if (e.stage != Stage::kEarly) continue;
    ++n_early;
    CHECK(word_count(e.response) <= kEarlyResponseMaxWords);
    CHECK_FALSE(e.grounding_memory_id.has_value());
    REQUIRE(e.counterpart_episode_id.has_value());
    const Episode& later = c.episodes.at(*e.counterpart_episode_id);
    CHECK(later.stage == Stage::kLater);
    CHECK(c.dialogue_of(later).time > c.dialogue_of(e).time);
    CHECK(c.dialogue_of(later).context == c.dialogue_of(e).context);
  }
  CHECK(n_early > 0);
}

TEST_CASE("later grounding memories predate their dialogue") {
  const auto g = generate_synthetic_corpus(small_config(), 3);
  const Corpus& c = g.corpus;
  for (const auto& e : c.episodes) {
    if (e.stage != Stage::kLater || !e.grounding_memory_id) continue;
    const MemoryEntry& m = c.memories.at(*e.grounding_memory_id);
    CHECK(m.time <= c.dialogue_of(e).time);
    CHECK(m.speaker_id == e.responder_id);
    CHECK(std::find(e.memory_ids.begin(), e.memory_ids.end(), m.id) != e.memory_ids.end());
  }
}

TEST_CASE("every referenced image exists and decodes") {
  const auto g = generate_synthetic_corpus(small_config(100), 5);
  for (const auto& m : g.corpus.memories) CHECK_NOTHROW(decode_ppm(g.images.bytes(m.image_ref)));
  for (const auto& d : g.corpus.dialogues) CHECK_NOTHROW(decode_ppm(g.images.bytes(d.image_ref)));
  const Image white = decode_ppm(g.images.bytes(kWhiteImageRef));
  CHECK(white.at(0, 0).r == 255);
}

double topic_name_rate(ModalityMode mode) {
  GeneratorConfig cfg = small_config();
  cfg.modality_mode = mode;
  const auto g = generate_synthetic_corpus(cfg, 7);
  std::size_t n = 0, hits = 0;
  for (const auto& e : g.corpus.episodes) {
    if (e.stage != Stage::kLater) continue;
    const Dialogue& d = g.corpus.dialogue_of(e);
    std::string text;
    for (const auto& u : d.context) text += u + " ";
    const auto toks = tokenize(text);
    ++n;
    if (std::find(toks.begin(), toks.end(), *d.topic) != toks.end()) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(n);
}

TEST_CASE("modality-switch mode keeps the topic out of about half the dialogue texts") {
  const double balanced = topic_name_rate(ModalityMode::kBalanced);
  const double switched = topic_name_rate(ModalityMode::kModalitySwitch);
  REQUIRE(balanced > 0.0);
  CHECK(switched / balanced >= 0.35);
  CHECK(switched / balanced <= 0.65);
}

TEST_CASE("infeasible settings are config errors") {
  GeneratorConfig narrow;
  narrow.year_start = 2010;
  narrow.year_end = 2010;
  narrow.early_offset_min_years = 2;
  narrow.early_offset_max_years = 3;
  CHECK_THROWS_AS(narrow.check(), ConfigError);
  CHECK_THROWS_AS(generate_synthetic_corpus(narrow, 1), ConfigError);

  GeneratorConfig few = small_config(2);
  CHECK_THROWS_AS(few.check(), ConfigError);

  GeneratorConfig starved = small_config(4000);
  starved.n_users = 2;
  starved.memories_per_user = 1;
  CHECK_THROWS_AS(starved.check(), ConfigError);

  CHECK_THROWS_AS(parse_modality_mode("sideways"), ConfigError);
}

}  // namespace
}  // namespace chronoret
