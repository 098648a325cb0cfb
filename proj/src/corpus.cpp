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

#include "chronoret/corpus.hpp"

#include <algorithm>
#include <cctype>

#include "chronoret/error.hpp"

namespace chronoret {

std::string_view to_string(Stage s) { return s == Stage::kLater ? "later" : "early"; }

std::string_view to_string(Split s) {
  switch (s) {
    case Split::kTrain: return "train";
    case Split::kVal: return "val";
    case Split::kTest: return "test";
  }
  return "train";
}

Stage parse_stage(std::string_view s) {
  if (s == "later") return Stage::kLater;
  if (s == "early") return Stage::kEarly;
  throw ParseError("unknown stage '" + std::string(s) + "'");
}

Split parse_split(std::string_view s) {
  if (s == "train") return Split::kTrain;
  if (s == "val") return Split::kVal;
  if (s == "test") return Split::kTest;
  throw ParseError("unknown split '" + std::string(s) + "'");
}

const MemoryEntry* Corpus::topical_memory(const Episode& e) const {
  if (e.grounding_memory_id) return memories.find(*e.grounding_memory_id);
  if (e.stage == Stage::kEarly && e.counterpart_episode_id) {
    const Episode* other = episodes.find(*e.counterpart_episode_id);
    if (other != nullptr && other->grounding_memory_id) {
      return memories.find(*other->grounding_memory_id);
    }
  }
  return nullptr;
}

MemoryEntry make_sentinel(std::string_view speaker_id, const DateStamp& dialogue_time) {
  MemoryEntry m;
  m.id = std::string(kNoMemoryId);
  m.speaker_id = std::string(speaker_id);
  m.text = std::string(kNoMemoryText);
  m.image_ref = std::string(kWhiteImageRef);
  m.time = dialogue_time;
  return m;
}

std::vector<MemoryEntry> augment_no_memory(std::vector<MemoryEntry> memories,
                                           const DateStamp& dialogue_time) {
  const bool present = std::any_of(memories.begin(), memories.end(),
                                    [](const MemoryEntry& m) { return m.is_sentinel(); });
  if (present) throw ConfigError("memory list already contains a No Memory entry");
  const std::string speaker = memories.empty() ? std::string() : memories.front().speaker_id;
  memories.push_back(make_sentinel(speaker, dialogue_time));
  return memories;
}

std::size_t word_count(std::string_view s) {
  std::size_t n = 0;
  bool in_word = false;
  for (unsigned char c : s) {
    const bool space = std::isspace(c) != 0;
    if (!space && !in_word) ++n;
    in_word = !space;
  }
  return n;
}

std::string truncate_words(std::string_view s, std::size_t max_words) {
  std::string out;
  std::size_t n = 0;
  std::size_t i = 0;
  while (i < s.size() && n < max_words) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size()) break;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (!out.empty()) out.push_back(' ');
    out.append(s.substr(i, j - i));
    ++n;
    i = j;
  }
  return out;
}

bool ValidationReport::has(std::string_view code) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.code == code; });
}

}  // namespace chronoret
