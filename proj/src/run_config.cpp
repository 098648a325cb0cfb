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

#include "chronoret/run_config.hpp"

#include <charconv>
#include <cmath>
#include <functional>

#include "chronoret/error.hpp"

namespace chronoret {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T to_int(std::string_view key, std::string_view v) {
  T out{};
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size()) {
    throw ConfigError("key '" + std::string(key) + "' expects an integer, got '" + std::string(v) + "'");
  }
  return out;
}

double to_real(std::string_view key, std::string_view v) {
  std::string s(v);
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty() || !std::isfinite(out)) {
    throw ConfigError("key '" + std::string(key) + "' expects a number, got '" + s + "'");
  }
  return out;
}

bool to_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "off" || v == "no") return false;
  throw ConfigError("key '" + std::string(key) + "' expects true/false, got '" + std::string(v) + "'");
}

// Shortest text that reads back to the same double.
std::string real_text(double x) {
  char buf[32];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, p);
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

struct Key {
  const char* name;
  std::function<void(RunConfig&, std::string_view key, std::string_view v)> set;
  std::function<std::string(const RunConfig&)> get;
};

#define INT_KEY(NAME, FIELD, T) \
  Key { \
    NAME, [](RunConfig& c, std::string_view k, std::string_view v) { c.FIELD = to_int<T>(k, v); }, \
    [](const RunConfig& c) { return std::to_string(c.FIELD); } \
  }
#define REAL_KEY(NAME, FIELD) \
  Key { \
    NAME, [](RunConfig& c, std::string_view k, std::string_view v) { c.FIELD = to_real(k, v); }, \
    [](const RunConfig& c) { return real_text(c.FIELD); } \
  }
#define BOOL_KEY(NAME, FIELD) \
  Key { \
    NAME, [](RunConfig& c, std::string_view k, std::string_view v) { c.FIELD = to_bool(k, v); }, \
    [](const RunConfig& c) { return bool_text(c.FIELD); } \
  }
#define STR_KEY(NAME, FIELD) \
  Key { \
    NAME, [](RunConfig& c, std::string_view, std::string_view v) { c.FIELD = std::string(v); }, \
    [](const RunConfig& c) { return c.FIELD; } \
  }
#define ENUM_KEY(NAME, FIELD, PARSE) \
  Key { \
    NAME, [](RunConfig& c, std::string_view, std::string_view v) { c.FIELD = PARSE(v); }, \
    [](const RunConfig& c) { return std::string(to_string(c.FIELD)); } \
  }

const std::vector<Key>& schema() {
  static const std::vector<Key> keys = {
      INT_KEY("seed", seed, uint64_t),
      STR_KEY("preset", preset),
      INT_KEY("jobs", jobs, int),
      ENUM_KEY("task", task, parse_task_kind),
      INT_KEY("corpus.users", generator.n_users, int),
      INT_KEY("corpus.memories_per_user", generator.memories_per_user, int),
      INT_KEY("corpus.episodes", generator.n_episodes, int),
      INT_KEY("corpus.topics", generator.n_topics, int),
      INT_KEY("corpus.topic_vocab", generator.topic_vocab, int),
      INT_KEY("corpus.topics_per_user", generator.topics_per_user, int),
      INT_KEY("corpus.caption_topic_words", generator.caption_topic_words, int),
      INT_KEY("corpus.year_start", generator.year_start, int),
      INT_KEY("corpus.year_end", generator.year_end, int),
      INT_KEY("corpus.early_offset_min_years", generator.early_offset_min_years, int),
      INT_KEY("corpus.early_offset_max_years", generator.early_offset_max_years, int),
      ENUM_KEY("corpus.modality", generator.modality_mode, parse_modality_mode),
      INT_KEY("corpus.image_size", generator.image_size, int),
      REAL_KEY("corpus.image_noise_blocks", generator.image_noise_blocks),
      REAL_KEY("corpus.dialogue_overlap", generator.dialogue_overlap),
      INT_KEY("corpus.dialogue_mentions", generator.dialogue_mentions, int),
      REAL_KEY("corpus.val_fraction", generator.val_fraction),
      REAL_KEY("corpus.test_fraction", generator.test_fraction),
      STR_KEY("corpus.llm_url", llm_url),
      BOOL_KEY("serialization.include_time", serialization.include_time),
      BOOL_KEY("serialization.relative_tokens", serialization.include_relative_time_tokens),
      BOOL_KEY("serialization.compound_tokens", serialization.compound_topic_time_tokens),
      INT_KEY("features.dim", features.dim, std::size_t),
      INT_KEY("features.encoder_seed", features.encoder_seed, uint64_t),
      BOOL_KEY("features.query_no_memory", features.query_no_memory),
      ENUM_KEY("features.input", features.input, parse_input_setting),
      STR_KEY("features.text_embeddings", text_embeddings),
      STR_KEY("features.image_embeddings", image_embeddings),
      ENUM_KEY("model.head", model.head, parse_head_kind),
      ENUM_KEY("model.atm_mode", model.atm_mode, parse_atm_mode),
      ENUM_KEY("model.similarity", model.similarity, parse_similarity),
      REAL_KEY("model.temperature", model.temperature),
      BOOL_KEY("model.projections", model.projections),
      INT_KEY("model.dim", model.dim, std::size_t),
      INT_KEY("train.epochs", train.epochs, int),
      INT_KEY("train.batch_size", train.batch_size, int),
      REAL_KEY("train.learning_rate", train.learning_rate),
      REAL_KEY("train.weight_decay", train.weight_decay),
      REAL_KEY("train.beta1", train.beta1),
      REAL_KEY("train.beta2", train.beta2),
      REAL_KEY("train.adam_eps", train.adam_eps),
      INT_KEY("tasks.C", train.n_candidates, std::size_t),
      INT_KEY("tasks.m", train.max_memories, std::size_t),
  };
  return keys;
}

const Key& lookup(std::string_view key) {
  for (const auto& k : schema()) {
    if (key == k.name) return k;
  }
  throw ConfigError("unknown configuration key '" + std::string(key) + "'");
}

void apply_preset(RunConfig& c, std::string_view name) {
  c.train = TrainConfig::preset(name);
  c.preset = std::string(name);
}

}  // namespace

void RunConfig::set(std::string_view key, std::string_view value) {
  if (key == "preset") {
    TrainConfig::preset(value);  // validates
  }
  lookup(key).set(*this, key, value);
}

std::string RunConfig::get(std::string_view key) const { return lookup(key).get(*this); }

std::vector<std::string> run_config_keys() {
  std::vector<std::string> out;
  for (const auto& k : schema()) out.emplace_back(k.name);
  return out;
}

std::string RunConfig::to_text() const {
  std::string out = "# chronoret " + std::string(kToolVersion) + "\n";
  out += "tool_version = " + std::string(kToolVersion) + "\n";
  for (const auto& k : schema()) out += std::string(k.name) + " = " + k.get(*this) + "\n";
  return out;
}

void RunConfig::check() const {
  generator.check();
  serialization.check();
  train.check();
  if (features.dim < 1) throw ConfigError("features.dim must be >= 1");
  if (jobs < 0) throw ConfigError("jobs must be >= 0");
  ModelConfig m = model;
  m.check();
}

KeyValues parse_key_values(std::string_view text, const std::string& origin) {
  KeyValues out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    std::string key = trim(std::string_view(t).substr(0, eq));
    std::string value = trim(std::string_view(t).substr(eq + 1));
    if (key == "tool_version") continue;
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

std::pair<std::string, std::string> parse_assignment(std::string_view s) {
  const auto eq = s.find('=');
  if (eq == std::string_view::npos) throw ConfigError("expected key=value, got '" + std::string(s) + "'");
  return {trim(s.substr(0, eq)), trim(s.substr(eq + 1))};
}

RunConfig resolve_run_config(const KeyValues& entries) {
  RunConfig c;
  for (const auto& [k, v] : entries) {
    if (k == "preset") apply_preset(c, v);
  }
  for (const auto& [k, v] : entries) {
    if (k != "preset") c.set(k, v);
  }
  // Model dims follow the feature dims unless projections remap them.
  bool model_dim_set = false;
  for (const auto& [k, v] : entries) model_dim_set |= k == "model.dim";
  if (!model_dim_set) c.model.dim = c.features.dim;
  c.model.text_in = c.features.dim;
  c.model.vision_in = c.features.dim;
  c.train.seed = c.seed;
  c.check();
  return c;
}

}  // namespace chronoret
