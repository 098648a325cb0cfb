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

#include <set>
#include <sstream>

#include "chronoret/corpus.hpp"
#include "chronoret/error.hpp"
#include "chronoret/fs_util.hpp"
#include "json.hpp"

namespace chronoret {
namespace {

using nlohmann::json;

std::string get_string(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    throw ParseError(std::string("missing or non-string field '") + key + "'");
  }
  return it->get<std::string>();
}

std::optional<std::string> get_optional_string(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw ParseError(std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

DateStamp get_date(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
  if (it->is_number_integer()) return from_epoch_seconds(it->get<int64_t>());
  if (it->is_string()) return parse_date_or_epoch(it->get<std::string>());
  throw ParseError(std::string("field '") + key + "' must be a date string or epoch seconds");
}

std::vector<std::string> get_string_list(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_array()) {
    throw ParseError(std::string("missing or non-array field '") + key + "'");
  }
  std::vector<std::string> out;
  for (const auto& v : *it) {
    if (!v.is_string()) throw ParseError(std::string("non-string entry in '") + key + "'");
    out.push_back(v.get<std::string>());
  }
  return out;
}

void put_optional(json& j, const char* key, const std::optional<std::string>& v) {
  if (v) j[key] = *v;
}

[[noreturn]] void fail(const std::string& origin, std::size_t line, const std::string& msg) {
  throw IntegrityError(origin + ":" + std::to_string(line) + ": " + msg);
}

}  // namespace

Corpus parse_corpus(std::string_view jsonl, const std::string& origin) {
  Corpus c;
  std::set<std::string> user_set;
  // Record line numbers so reference errors can point back at the source.
  std::vector<std::size_t> episode_lines;
  std::istringstream in{std::string(jsonl)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      const std::string kind = get_string(j, "kind");
      if (kind == "corpus") {
        c.generator_config_fingerprint =
            get_optional_string(j, "generator_config_fingerprint").value_or("");
      } else if (kind == "user") {
        const std::string id = get_string(j, "id");
        if (!user_set.insert(id).second) fail(origin, lineno, "duplicate user id '" + id + "'");
        c.users.push_back(id);
      } else if (kind == "memory") {
        MemoryEntry m;
        m.id = get_string(j, "id");
        m.speaker_id = get_string(j, "speaker_id");
        m.text = get_string(j, "text");
        m.image_ref = get_string(j, "image_ref");
        m.time = get_date(j, "time");
        m.topic = get_optional_string(j, "topic");
        const std::string id = m.id;
        if (!c.memories.insert(std::move(m))) fail(origin, lineno, "duplicate memory id '" + id + "'");
      } else if (kind == "dialogue") {
        Dialogue d;
        d.id = get_string(j, "id");
        d.context = get_string_list(j, "context");
        d.image_ref = get_string(j, "image_ref");
        d.time = get_date(j, "time");
        d.topic = get_optional_string(j, "topic");
        const std::string id = d.id;
        if (!c.dialogues.insert(std::move(d))) fail(origin, lineno, "duplicate dialogue id '" + id + "'");
      } else if (kind == "episode") {
        Episode e;
        e.id = get_string(j, "id");
        e.dialogue_id = get_string(j, "dialogue_id");
        e.responder_id = get_string(j, "responder_id");
        e.response = get_string(j, "response");
        e.memory_ids = get_string_list(j, "memory_ids");
        e.grounding_memory_id = get_optional_string(j, "grounding_memory_id");
        e.stage = parse_stage(get_string(j, "stage"));
        e.counterpart_episode_id = get_optional_string(j, "counterpart_episode_id");
        e.split = parse_split(get_string(j, "split"));
        const std::string id = e.id;
        if (!c.episodes.insert(std::move(e))) fail(origin, lineno, "duplicate episode id '" + id + "'");
        episode_lines.push_back(lineno);
      } else {
        fail(origin, lineno, "unknown record kind '" + kind + "'");
      }
    } catch (const IntegrityError&) {
      throw;
    } catch (const json::exception& ex) {
      fail(origin, lineno, std::string("invalid JSON: ") + ex.what());
    } catch (const Error& ex) {
      fail(origin, lineno, ex.what());
    }
  }

  for (const auto& m : c.memories) {
    if (!user_set.count(m.speaker_id)) {
      throw IntegrityError(origin + ": memory '" + m.id + "' references unknown user '" +
                           m.speaker_id + "'");
    }
  }
  for (std::size_t i = 0; i < c.episodes.size(); ++i) {
    const Episode& e = c.episodes.items()[i];
    const std::size_t ln = episode_lines[i];
    if (!c.dialogues.contains(e.dialogue_id)) {
      fail(origin, ln, "episode '" + e.id + "' references unknown dialogue '" + e.dialogue_id + "'");
    }
    if (!user_set.count(e.responder_id)) {
      fail(origin, ln, "episode '" + e.id + "' references unknown user '" + e.responder_id + "'");
    }
    for (const auto& mid : e.memory_ids) {
      if (!c.memories.contains(mid)) {
        fail(origin, ln, "episode '" + e.id + "' references unknown memory '" + mid + "'");
      }
    }
    if (e.grounding_memory_id && !c.memories.contains(*e.grounding_memory_id)) {
      fail(origin, ln, "episode '" + e.id + "' references unknown memory '" +
                           *e.grounding_memory_id + "'");
    }
    if (e.counterpart_episode_id && !c.episodes.contains(*e.counterpart_episode_id)) {
      fail(origin, ln, "episode '" + e.id + "' references unknown episode '" +
                           *e.counterpart_episode_id + "'");
    }
  }
  return c;
}

Corpus load_corpus(const std::string& path) { return parse_corpus(read_file(path), path); }

std::string corpus_to_jsonl(const Corpus& c) {
  std::string out;
  auto emit = [&out](const json& j) {
    out += j.dump();
    out += '\n';
  };
  if (!c.generator_config_fingerprint.empty()) {
    emit(json{{"kind", "corpus"}, {"generator_config_fingerprint", c.generator_config_fingerprint}});
  }
  for (const auto& u : c.users) emit(json{{"kind", "user"}, {"id", u}});
  for (const auto& m : c.memories) {
    json j{{"kind", "memory"}, {"id", m.id}, {"speaker_id", m.speaker_id}, {"text", m.text},
           {"image_ref", m.image_ref}, {"time", format_date(m.time)}};
    put_optional(j, "topic", m.topic);
    emit(j);
  }
  for (const auto& d : c.dialogues) {
    json j{{"kind", "dialogue"}, {"id", d.id}, {"context", d.context},
           {"image_ref", d.image_ref}, {"time", format_date(d.time)}};
    put_optional(j, "topic", d.topic);
    emit(j);
  }
  for (const auto& e : c.episodes) {
    json j{{"kind", "episode"}, {"id", e.id}, {"dialogue_id", e.dialogue_id},
           {"responder_id", e.responder_id}, {"response", e.response},
           {"memory_ids", e.memory_ids}, {"stage", std::string(to_string(e.stage))},
           {"split", std::string(to_string(e.split))}};
    put_optional(j, "grounding_memory_id", e.grounding_memory_id);
    put_optional(j, "counterpart_episode_id", e.counterpart_episode_id);
    emit(j);
  }
  return out;
}

void save_corpus(const Corpus& c, const std::string& path) {
  write_file_atomic(path, corpus_to_jsonl(c));
}

}  // namespace chronoret
