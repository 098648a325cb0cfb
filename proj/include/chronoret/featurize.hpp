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

#ifndef CHRONORET_FEATURIZE_HPP_
#define CHRONORET_FEATURIZE_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "chronoret/corpus.hpp"
#include "chronoret/embedding_store.hpp"
#include "chronoret/feature_vector.hpp"
#include "chronoret/image.hpp"
#include "chronoret/serialize.hpp"
#include "chronoret/tasks.hpp"

namespace chronoret {

enum class InputSetting { kDialogueOnly, kDialogueAndMemories };

std::string_view to_string(InputSetting s);
InputSetting parse_input_setting(std::string_view s);

struct FeatureConfig {
  std::size_t dim = 256;
  uint64_t encoder_seed = 0;
  // Adds the "No Memory" entry to the query-side memory list.
  bool query_no_memory = true;
  InputSetting input = InputSetting::kDialogueAndMemories;

  std::string fingerprint() const;
};

// Text and image encoders with per-key caches. Reference encoders are used
// unless an external store is supplied for that modality.
class Encoders {
 public:
  Encoders(const FeatureConfig& cfg, const ImageSource* images,
           const EmbeddingStore* text_store = nullptr, const EmbeddingStore* image_store = nullptr);

  const FeatureVector& text(const std::string& serialized);
  const FeatureVector& image(const std::string& ref);
  std::size_t text_dim() const;
  std::size_t vision_dim() const;

 private:
  FeatureConfig cfg_;
  const ImageSource* images_;
  const EmbeddingStore* text_store_;
  const EmbeddingStore* image_store_;
  std::unordered_map<std::string, FeatureVector> text_cache_;
  std::unordered_map<std::string, FeatureVector> image_cache_;
};

// Deduplicated feature rows shared by all instances of a set.
class FeatureBank {
 public:
  FeatureBank() = default;
  FeatureBank(std::size_t text_dim, std::size_t vision_dim) : text_dim_(text_dim), vision_dim_(vision_dim) {}

  uint32_t add_text(const std::string& key, const FeatureVector& v);
  uint32_t add_vision(const std::string& key, const FeatureVector& v);
  std::span<const double> text_row(uint32_t i) const {
    return {text_.data() + static_cast<std::size_t>(i) * text_dim_, text_dim_};
  }
  std::span<const double> vision_row(uint32_t i) const {
    return {vision_.data() + static_cast<std::size_t>(i) * vision_dim_, vision_dim_};
  }
  std::size_t text_dim() const { return text_dim_; }
  std::size_t vision_dim() const { return vision_dim_; }
  std::size_t text_rows() const { return text_dim_ ? text_.size() / text_dim_ : 0; }
  std::size_t vision_rows() const { return vision_dim_ ? vision_.size() / vision_dim_ : 0; }

 private:
  std::size_t text_dim_ = 0;
  std::size_t vision_dim_ = 0;
  std::vector<double> text_;
  std::vector<double> vision_;
  std::unordered_map<std::string, uint32_t> text_index_;
  std::unordered_map<std::string, uint32_t> vision_index_;
};

inline constexpr uint32_t kNoRow = 0xffffffffu;

struct PreparedInstance {
  std::string episode_id;
  Stage stage = Stage::kLater;
  LabelKind label_kind = LabelKind::kGrounding;
  std::size_t label = 0;
  // Episode id of the Later member of a counterpart pair, else the own id.
  std::string pair_key;
  uint32_t query_text = 0;
  uint32_t query_vision = 0;
  std::vector<uint32_t> cand_text;
  std::vector<uint32_t> cand_vision;  // kNoRow entries for text-only candidates

  std::size_t n_candidates() const { return cand_text.size(); }
};

struct PreparedSet {
  TaskKind task = TaskKind::kTgmp;
  FeatureBank bank;
  std::vector<PreparedInstance> items;
};

// Memory entries the query sees: the listed ids plus, when configured, the
// sentinel dated on the dialogue day.
std::vector<MemoryEntry> query_memories(const Corpus& c, const std::vector<std::string>& ids,
                                        const DateStamp& dialogue_time, const FeatureConfig& fcfg);

PreparedSet prepare_tgmp(const Corpus& c, const std::vector<TgmpInstance>& instances, Encoders& enc,
                         const SerializationConfig& ser, const FeatureConfig& fcfg);
PreparedSet prepare_tnrp(const Corpus& c, const std::vector<TnrpInstance>& instances, Encoders& enc,
                         const SerializationConfig& ser, const FeatureConfig& fcfg);

}  // namespace chronoret

#endif  // CHRONORET_FEATURIZE_HPP_
