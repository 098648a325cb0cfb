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

#include "chronoret/serialize.hpp"

#include "chronoret/error.hpp"
#include "chronoret/hash.hpp"
#include "chronoret/text_encoder.hpp"

namespace chronoret {
namespace {

std::string memory_entry(const MemoryEntry& m, const DateStamp& dialogue_time,
                         const SerializationConfig& cfg) {
  std::string out = m.text;
  if (cfg.include_time) out += " " + format_date(m.time);
  const std::string_view rel = relative_time_token(m.time, dialogue_time);
  if (cfg.include_relative_time_tokens) {
    out += " ";
    out += rel;
  }
  if (cfg.compound_topic_time_tokens) {
    for (const auto& tok : tokenize(m.text)) {
      out += " " + tok + "|";
      out += rel;
    }
  }
  return out;
}

}  // namespace

SerializationConfig SerializationConfig::time_stripped() {
  SerializationConfig c;
  c.include_time = false;
  c.include_relative_time_tokens = false;
  c.compound_topic_time_tokens = false;
  return c;
}

void SerializationConfig::check() const {
  if (delimiter.empty()) throw ConfigError("delimiter must be nonempty");
  if (delimiter.find_first_not_of(' ') == std::string::npos) {
    throw ConfigError("delimiter must contain a non-space character");
  }
}

std::string SerializationConfig::fingerprint() const {
  const std::string s = std::string("time=") + (include_time ? "1" : "0") +
                        ";rel=" + (include_relative_time_tokens ? "1" : "0") +
                        ";compound=" + (compound_topic_time_tokens ? "1" : "0") + ";delim=" + delimiter;
  return hex64(seeded_hash(0x5e7, s));
}

std::string_view relative_time_token(const DateStamp& memory_time, const DateStamp& dialogue_time) {
  if (memory_time < dialogue_time) return "rel:past";
  if (memory_time == dialogue_time) return "rel:same";
  return "rel:future";
}

std::string serialize_dialogue(const Dialogue& d, const SerializationConfig& cfg) {
  std::string out;
  for (const auto& u : d.context) {
    if (!out.empty()) out += ' ';
    out += u;
  }
  if (cfg.include_time) out += " " + format_date(d.time);
  return out;
}

std::string serialize_text(const Dialogue& dialogue, const std::vector<MemoryEntry>& memories,
                           const SerializationConfig& cfg) {
  std::string out = serialize_dialogue(dialogue, cfg);
  for (const auto& m : memories) {
    out += cfg.delimiter;
    out += memory_entry(m, dialogue.time, cfg);
  }
  return out;
}

std::string serialize_candidate_memory(const MemoryEntry& mem, const DateStamp& dialogue_time,
                                       const SerializationConfig& cfg) {
  return memory_entry(mem, dialogue_time, cfg);
}

}  // namespace chronoret
