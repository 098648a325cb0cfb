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

#include "chronoret/error.hpp"
#include "chronoret/run_config.hpp"
#include "doctest.h"

namespace chronoret {
namespace {

TEST_CASE("defaults resolve to the desk preset") {
  const RunConfig c = resolve_run_config({});
  CHECK(c.preset == "desk");
  CHECK(c.seed == 7);
  CHECK(c.train.learning_rate == 1e-3);
  CHECK(c.train.epochs == 5);
  CHECK(c.train.batch_size == 8);
  CHECK(c.model.projections);
  CHECK(c.model.dim == c.features.dim);
}

TEST_CASE("the preset applies before explicit entries regardless of order") {
  const RunConfig c = resolve_run_config({{"train.learning_rate", "0.01"}, {"preset", "paper"}});
  CHECK(c.preset == "paper");
  CHECK(c.train.learning_rate == 0.01);
  CHECK(c.train.n_candidates == 100);
  CHECK(resolve_run_config({{"preset", "paper"}}).train.learning_rate == 3e-6);
}

TEST_CASE("the resolved text reads back to the same config") {
  const RunConfig a = resolve_run_config({{"corpus.modality", "modality-switch"},
                                          {"corpus.dialogue_overlap", "0.9"},
                                          {"model.head", "linear"},
                                          {"seed", "11"}});
  const std::string text = a.to_text();
  CHECK(text.find("corpus.dialogue_overlap = 0.9\n") != std::string::npos);
  CHECK(text.find("model.head = linear\n") != std::string::npos);
  const RunConfig b = resolve_run_config(parse_key_values(text));
  CHECK(b.to_text() == text);
  CHECK(b.train.seed == 11);
}

TEST_CASE("every schema key round-trips through get and set") {
  RunConfig c;
  for (const auto& key : run_config_keys()) {
    const std::string v = c.get(key);
    CHECK_NOTHROW(c.set(key, v));
    CHECK(c.get(key) == v);
  }
}

TEST_CASE("bad keys and values are config errors") {
  RunConfig c;
  CHECK_THROWS_AS(c.set("model.colour", "red"), ConfigError);
  CHECK_THROWS_AS(c.set("train.epochs", "five"), ConfigError);
  CHECK_THROWS_AS(c.set("serialization.include_time", "maybe"), ConfigError);
  CHECK_THROWS_AS(c.set("model.head", "bilinear"), ConfigError);
  CHECK_THROWS_AS(resolve_run_config({{"preset", "huge"}}), ConfigError);
  CHECK_THROWS_AS(resolve_run_config({{"train.epochs", "0"}}), ConfigError);
  CHECK_THROWS_AS(parse_key_values("seed 7\n", "cfg"), ConfigError);
  CHECK_THROWS_AS(parse_assignment("novalue"), ConfigError);
}

TEST_CASE("key-value parsing skips comments and blank lines") {
  const KeyValues kv = parse_key_values("# header\n\nseed = 3  # trailing\n tool_version = 9\nmodel.head=mean\n");
  REQUIRE(kv.size() == 2);
  CHECK(kv[0] == std::pair<std::string, std::string>{"seed", "3"});
  CHECK(kv[1] == std::pair<std::string, std::string>{"model.head", "mean"});
  CHECK(parse_assignment(" jobs = 4 ") == std::pair<std::string, std::string>{"jobs", "4"});
}

}  // namespace
}  // namespace chronoret
