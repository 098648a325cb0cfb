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

#include <cmath>
#include <map>
#include <set>

#include "chronoret/corpus.hpp"
#include "json.hpp"

namespace chronoret {
namespace {

void check_ratio(ValidationReport& r, const char* name, double numerator, double denominator,
                 double target, double tol) {
  if (denominator == 0.0) {
    r.warnings.push_back(std::string(name) + ": no early-stage episodes");
    return;
  }
  const double ratio = numerator / denominator;
  if (std::abs(ratio - target) > tol * target) {
    r.warnings.push_back(std::string(name) + " ratio " + std::to_string(ratio) +
                         " outside target " + std::to_string(target) + " +/- " +
                         std::to_string(static_cast<int>(tol * 100)) + "%");
  }
}

}  // namespace

ValidationReport validate_corpus(const Corpus& c, const ValidationOptions& opts) {
  ValidationReport r;
  r.n_users = c.users.size();
  r.n_memories = c.memories.size();
  r.n_dialogues = c.dialogues.size();
  r.n_episodes = c.episodes.size();
  auto add = [&r](std::string code, const std::string& id, std::string detail) {
    r.violations.push_back(Violation{std::move(code), id, std::move(detail)});
  };

  const std::set<std::string> users(c.users.begin(), c.users.end());
  for (const auto& m : c.memories) {
    if (m.text.empty()) add("empty-text", m.id, "memory text is empty");
    if (!users.count(m.speaker_id)) add("missing-reference", m.id, "unknown speaker " + m.speaker_id);
  }
  for (const auto& d : c.dialogues) {
    if (d.context.empty()) add("empty-context", d.id, "dialogue has no utterances");
    for (const auto& u : d.context) {
      if (u.empty()) add("empty-context", d.id, "empty utterance");
    }
  }

  std::map<std::string, std::set<Split>> dialogue_splits;
  for (const auto& e : c.episodes) {
    const Dialogue* d = c.dialogues.find(e.dialogue_id);
    if (d == nullptr) {
      add("missing-reference", e.id, "unknown dialogue " + e.dialogue_id);
      continue;
    }
    dialogue_splits[e.dialogue_id].insert(e.split);
    if (!users.count(e.responder_id)) add("missing-reference", e.id, "unknown responder " + e.responder_id);
    if (e.memory_ids.size() > opts.max_memories) {
      add("memory-count", e.id, std::to_string(e.memory_ids.size()) + " memories exceed limit");
    }
    for (const auto& mid : e.memory_ids) {
      const MemoryEntry* m = c.memories.find(mid);
      if (m == nullptr) {
        add("missing-reference", e.id, "unknown memory " + mid);
      } else if (m->speaker_id != e.responder_id) {
        add("memory-owner", e.id, "memory " + mid + " belongs to " + m->speaker_id);
      }
    }
    const Episode* other = nullptr;
    if (e.counterpart_episode_id) {
      other = c.episodes.find(*e.counterpart_episode_id);
      if (other == nullptr) add("missing-reference", e.id, "unknown counterpart " + *e.counterpart_episode_id);
    }

    if (e.stage == Stage::kLater) {
      ++r.n_later;
      if (e.grounding_memory_id) {
        ++r.n_later_grounded;
        const MemoryEntry* g = c.memories.find(*e.grounding_memory_id);
        if (g == nullptr) {
          add("missing-reference", e.id, "unknown grounding memory " + *e.grounding_memory_id);
        } else {
          if (g->time > d->time) {
            add("temporal-order", e.id, "grounding memory " + g->id + " at " +
                                            format_date(g->time) + " after dialogue " +
                                            format_date(d->time));
          }
          if (g->speaker_id != e.responder_id) add("memory-owner", e.id, "grounding memory of another speaker");
        }
      }
    } else {
      ++r.n_early;
      if (e.grounding_memory_id) add("early-stage-grounding", e.id, "early episode carries a grounding memory");
      if (word_count(e.response) > kEarlyResponseMaxWords) {
        add("early-response-length", e.id, std::to_string(word_count(e.response)) + " words");
      }
      const MemoryEntry* topical = c.topical_memory(e);
      if (topical != nullptr && !(topical->time > d->time)) {
        add("early-stage-topical-time", e.id, "topical memory " + topical->id + " not after dialogue");
      }
      if (other != nullptr) {
        const Dialogue* od = c.dialogues.find(other->dialogue_id);
        if (od != nullptr && !(od->time > d->time)) {
          add("counterpart-order", e.id, "counterpart dialogue is not strictly later");
        }
        if (od != nullptr && od->context != d->context) {
          add("counterpart-context", e.id, "counterpart dialogue context differs");
        }
      }
    }
  }
  for (const auto& [did, splits] : dialogue_splits) {
    if (splits.size() > 1) r.warnings.push_back("dialogue " + did + " appears in more than one split");
  }

  if (c.episodes.empty()) {
    r.warnings.push_back("corpus has zero episodes");
  } else {
    check_ratio(r, "later:early", static_cast<double>(r.n_later), static_cast<double>(r.n_early), 3.0,
                opts.ratio_tolerance);
    check_ratio(r, "grounded-later:early", static_cast<double>(r.n_later_grounded),
                static_cast<double>(r.n_early), 2.0, opts.ratio_tolerance);
  }
  return r;
}

std::string validation_report_json(const ValidationReport& r) {
  nlohmann::json j;
  j["ok"] = r.ok();
  j["counts"] = {{"users", r.n_users},         {"memories", r.n_memories},
                 {"dialogues", r.n_dialogues}, {"episodes", r.n_episodes},
                 {"later", r.n_later},         {"later_grounded", r.n_later_grounded},
                 {"early", r.n_early}};
  j["violations"] = nlohmann::json::array();
  for (const auto& v : r.violations) {
    j["violations"].push_back({{"code", v.code}, {"id", v.id}, {"detail", v.detail}});
  }
  j["warnings"] = r.warnings;
  return j.dump(2) + "\n";
}

}  // namespace chronoret
