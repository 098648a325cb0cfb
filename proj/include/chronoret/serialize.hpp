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

#ifndef CHRONORET_SERIALIZE_HPP_
#define CHRONORET_SERIALIZE_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "chronoret/corpus.hpp"

namespace chronoret {

struct SerializationConfig {
  bool include_time = true;
  bool include_relative_time_tokens = true;
  std::string delimiter = " [SEP] ";
  bool compound_topic_time_tokens = true;

  // Dates, relative tokens and compounds all off.
  static SerializationConfig time_stripped();
  bool uses_time() const {
    return include_time || include_relative_time_tokens || compound_topic_time_tokens;
  }
  void check() const;
  std::string fingerprint() const;
};

// "rel:past", "rel:same" or "rel:future" for a memory relative to a dialogue.
std::string_view relative_time_token(const DateStamp& memory_time, const DateStamp& dialogue_time);

std::string serialize_dialogue(const Dialogue& d, const SerializationConfig& cfg);

// Dialogue entry first, then each memory entry, joined by the delimiter.
std::string serialize_text(const Dialogue& dialogue, const std::vector<MemoryEntry>& memories,
                           const SerializationConfig& cfg);

std::string serialize_candidate_memory(const MemoryEntry& mem, const DateStamp& dialogue_time,
                                       const SerializationConfig& cfg);

}  // namespace chronoret

#endif  // CHRONORET_SERIALIZE_HPP_
