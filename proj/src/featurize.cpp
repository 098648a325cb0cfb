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

#include "chronoret/featurize.hpp"

#include "chronoret/error.hpp"
#include "chronoret/hash.hpp"
#include "chronoret/image_encoder.hpp"
#include "chronoret/text_encoder.hpp"

namespace chronoret {

std::string_view to_string(InputSetting s) {
  return s == InputSetting::kDialogueOnly ? "dialogue-only" : "dialogue+memories";
}

InputSetting parse_input_setting(std::string_view s) {
  if (s == "dialogue-only") return InputSetting::kDialogueOnly;
  if (s == "dialogue+memories" || s == "full") return InputSetting::kDialogueAndMemories;
  throw ConfigError("unknown input setting '" + std::string(s) + "'");
}

std::string FeatureConfig::fingerprint() const {
  const std::string s = "dim=" + std::to_string(dim) + ";seed=" + std::to_string(encoder_seed) +
                        ";qnm=" + (query_no_memory ? "1" : "0") + ";input=" + std::string(to_string(input));
  return hex64(seeded_hash(0xfea7, s));
}

Encoders::Encoders(const FeatureConfig& cfg, const ImageSource* images, const EmbeddingStore* text_store,
                   const EmbeddingStore* image_store)
    : cfg_(cfg), images_(images), text_store_(text_store), image_store_(image_store) {
  if (cfg.dim < 8) throw ConfigError("feature dim must be >= 8");
}

const FeatureVector& Encoders::text(const std::string& serialized) {
  auto it = text_cache_.find(serialized);
  if (it != text_cache_.end()) return it->second;
  FeatureVector v = text_store_ ? text_store_->at(text_fingerprint(serialized))
                                : encode_text_reference(serialized, cfg_.dim, cfg_.encoder_seed);
  return text_cache_.emplace(serialized, std::move(v)).first->second;
}

const FeatureVector& Encoders::image(const std::string& ref) {
  auto it = image_cache_.find(ref);
  if (it != image_cache_.end()) return it->second;
  FeatureVector v;
  if (image_store_) {
    v = image_store_->at(ref);
  } else {
    if (images_ == nullptr) throw ConfigError("no image source configured");
    v = encode_image_reference(images_->bytes(ref), cfg_.dim, cfg_.encoder_seed);
  }
  return image_cache_.emplace(ref, std::move(v)).first->second;
}

std::size_t Encoders::text_dim() const { return text_store_ ? text_store_->dim() : cfg_.dim; }
std::size_t Encoders::vision_dim() const { return image_store_ ? image_store_->dim() : cfg_.dim; }

uint32_t FeatureBank::add_text(const std::string& key, const FeatureVector& v) {
  auto it = text_index_.find(key);
  if (it != text_index_.end()) return it->second;
  if (v.dim() != text_dim_) throw ConfigError("text feature dim mismatch");
  const auto row = static_cast<uint32_t>(text_rows());
  text_.insert(text_.end(), v.values().begin(), v.values().end());
  text_index_.emplace(key, row);
  return row;
}

uint32_t FeatureBank::add_vision(const std::string& key, const FeatureVector& v) {
  auto it = vision_index_.find(key);
  if (it != vision_index_.end()) return it->second;
  if (v.dim() != vision_dim_) throw ConfigError("vision feature dim mismatch");
  const auto row = static_cast<uint32_t>(vision_rows());
  vision_.insert(vision_.end(), v.values().begin(), v.values().end());
  vision_index_.emplace(key, row);
  return row;
}

std::vector<MemoryEntry> query_memories(const Corpus& c, const std::vector<std::string>& ids,
                                        const DateStamp& dialogue_time, const FeatureConfig& fcfg) {
  std::vector<MemoryEntry> out;
  if (fcfg.input == InputSetting::kDialogueOnly) return out;
  for (const auto& id : ids) out.push_back(c.memories.at(id));
  if (fcfg.query_no_memory) out = augment_no_memory(std::move(out), dialogue_time);
  return out;
}

namespace {

std::string pair_key(const Episode& e) {
  if (!e.counterpart_episode_id) return e.id;
  return e.stage == Stage::kLater ? e.id : *e.counterpart_episode_id;
}

void add_query(const Corpus& c, const Episode& e, const std::vector<std::string>& memory_ids, Encoders& enc,
               const SerializationConfig& ser, const FeatureConfig& fcfg, FeatureBank& bank,
               PreparedInstance& p) {
  const Dialogue& d = c.dialogue_of(e);
  const std::vector<MemoryEntry> mems = query_memories(c, memory_ids, d.time, fcfg);
  const std::string text = serialize_text(d, mems, ser);
  p.query_text = bank.add_text(text, enc.text(text));
  std::vector<FeatureVector> pool{enc.image(d.image_ref)};
  std::string key = "pool:" + d.image_ref;
  for (const auto& m : mems) {
    pool.push_back(enc.image(m.image_ref));
    key += "|" + m.image_ref;
  }
  p.query_vision = bank.add_vision(key, mean_pool(pool));
}

PreparedInstance skeleton(const Episode& e, std::size_t label) {
  PreparedInstance p;
  p.episode_id = e.id;
  p.stage = e.stage;
  p.label = label;
  p.pair_key = pair_key(e);
  return p;
}

}  // namespace

PreparedSet prepare_tgmp(const Corpus& c, const std::vector<TgmpInstance>& instances, Encoders& enc,
                         const SerializationConfig& ser, const FeatureConfig& fcfg) {
  ser.check();
  PreparedSet set;
  set.task = TaskKind::kTgmp;
  set.bank = FeatureBank(enc.text_dim(), enc.vision_dim());
  for (const auto& inst : instances) {
    const Episode& e = c.episodes.at(inst.episode_id);
    const Dialogue& d = c.dialogue_of(e);
    PreparedInstance p = skeleton(e, inst.label_index);
    p.label_kind = inst.label_kind;
    add_query(c, e, inst.input_memory_ids, enc, ser, fcfg, set.bank, p);
    for (const auto& mid : inst.candidates) {
      const MemoryEntry m = mid == kNoMemoryId ? make_sentinel(e.responder_id, d.time) : c.memories.at(mid);
      const std::string text = serialize_candidate_memory(m, d.time, ser);
      p.cand_text.push_back(set.bank.add_text(text, enc.text(text)));
      p.cand_vision.push_back(set.bank.add_vision(m.image_ref, enc.image(m.image_ref)));
    }
    set.items.push_back(std::move(p));
  }
  return set;
}

PreparedSet prepare_tnrp(const Corpus& c, const std::vector<TnrpInstance>& instances, Encoders& enc,
                         const SerializationConfig& ser, const FeatureConfig& fcfg) {
  ser.check();
  PreparedSet set;
  set.task = TaskKind::kTnrp;
  set.bank = FeatureBank(enc.text_dim(), enc.vision_dim());
  for (const auto& inst : instances) {
    const Episode& e = c.episodes.at(inst.episode_id);
    PreparedInstance p = skeleton(e, inst.label_index);
    p.label_kind = e.grounding_memory_id ? LabelKind::kGrounding : LabelKind::kNoMemory;
    add_query(c, e, e.memory_ids, enc, ser, fcfg, set.bank, p);
    for (const auto& eid : inst.candidate_episode_ids) {
      const std::string& response = c.episodes.at(eid).response;
      p.cand_text.push_back(set.bank.add_text(response, enc.text(response)));
      p.cand_vision.push_back(kNoRow);
    }
    set.items.push_back(std::move(p));
  }
  return set;
}

}  // namespace chronoret
