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

#ifndef CHRONORET_CORPUS_HPP_
#define CHRONORET_CORPUS_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "chronoret/date.hpp"
#include "chronoret/error.hpp"

namespace chronoret {

inline constexpr std::string_view kNoMemoryText = "No Memory";
inline constexpr std::string_view kNoMemoryId = "no-memory";
inline constexpr std::string_view kWhiteImageRef = "images/white.ppm";
inline constexpr std::size_t kEarlyResponseMaxWords = 40;

enum class Stage { kLater, kEarly };
enum class Split { kTrain, kVal, kTest };

std::string_view to_string(Stage s);
std::string_view to_string(Split s);
Stage parse_stage(std::string_view s);
Split parse_split(std::string_view s);

struct MemoryEntry {
  std::string id;
  std::string speaker_id;
  std::string text;
  std::string image_ref;
  DateStamp time;
  std::optional<std::string> topic;

  bool is_sentinel() const { return text == kNoMemoryText; }
};

struct Dialogue {
  std::string id;
  std::vector<std::string> context;
  std::string image_ref;
  DateStamp time;
  std::optional<std::string> topic;
};

struct Episode {
  std::string id;
  std::string dialogue_id;
  std::string responder_id;
  std::string response;
  std::vector<std::string> memory_ids;
  std::optional<std::string> grounding_memory_id;
  Stage stage = Stage::kLater;
  std::optional<std::string> counterpart_episode_id;
  Split split = Split::kTrain;
};

// Insertion-ordered id-indexed collection.
template <typename T>
class Table {
 public:
  // Returns false when the id already exists.
  bool insert(T item) {
    auto [it, fresh] = index_.emplace(item.id, items_.size());
    if (!fresh) return false;
    items_.push_back(std::move(item));
    return true;
  }
  const T* find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    return it == index_.end() ? nullptr : &items_[it->second];
  }
  const T& at(std::string_view id) const;
  bool contains(std::string_view id) const { return find(id) != nullptr; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const std::vector<T>& items() const { return items_; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

 private:
  std::vector<T> items_;
  std::unordered_map<std::string, std::size_t> index_;
};

template <typename T>
const T& Table<T>::at(std::string_view id) const {
  const T* p = find(id);
  if (p == nullptr) throw IntegrityError("unknown id '" + std::string(id) + "'");
  return *p;
}

struct Corpus {
  std::vector<std::string> users;
  Table<MemoryEntry> memories;
  Table<Dialogue> dialogues;
  Table<Episode> episodes;
  std::string generator_config_fingerprint;

  const Dialogue& dialogue_of(const Episode& e) const { return dialogues.at(e.dialogue_id); }
  // The memory that carries the episode's topic: the grounding memory for a
  // Later episode, the counterpart's grounding memory for an Early one.
  const MemoryEntry* topical_memory(const Episode& e) const;
};

MemoryEntry make_sentinel(std::string_view speaker_id, const DateStamp& dialogue_time);

// Appends the "No Memory" entry; throws ConfigError if one is already present.
std::vector<MemoryEntry> augment_no_memory(std::vector<MemoryEntry> memories,
                                           const DateStamp& dialogue_time);

std::size_t word_count(std::string_view s);

// Keeps at most max_words whitespace-separated words.
std::string truncate_words(std::string_view s, std::size_t max_words);

// --- persistence ---

Corpus load_corpus(const std::string& path);
Corpus parse_corpus(std::string_view jsonl, const std::string& origin = "<memory>");
std::string corpus_to_jsonl(const Corpus& c);
void save_corpus(const Corpus& c, const std::string& path);

// --- validation ---

struct Violation {
  std::string code;
  std::string id;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<std::string> warnings;
  std::size_t n_users = 0;
  std::size_t n_memories = 0;
  std::size_t n_dialogues = 0;
  std::size_t n_episodes = 0;
  std::size_t n_later = 0;
  std::size_t n_later_grounded = 0;
  std::size_t n_early = 0;

  bool ok() const { return violations.empty(); }
  bool has(std::string_view code) const;
};

struct ValidationOptions {
  std::size_t max_memories = 20;
  double ratio_tolerance = 0.10;
};

ValidationReport validate_corpus(const Corpus& c, const ValidationOptions& opts = {});
std::string validation_report_json(const ValidationReport& r);

}  // namespace chronoret

#endif  // CHRONORET_CORPUS_HPP_
