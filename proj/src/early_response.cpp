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

#include "chronoret/early_response.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <set>

#include "chronoret/error.hpp"
#include "chronoret/hash.hpp"

namespace chronoret {
namespace {

constexpr std::string_view kPromptHead =
    "Given the topic of a conversation, the context of the dialogue, and multiple memories of "
    "the speaker, please write a response to the conversation.\n"
    "\n"
    "It is important to note:\n"
    "1. responses could not exceed 40 words.\n"
    "2. If the memories are almost unrelated to the conversation, the generated response should "
    "reflect the speaker's lack of expertise in the conversation topic. If appropriate, consider "
    "incorporating the current content of the speaker's memories.\n"
    "3. If the memories are related to the conversation, the response should express a "
    "willingness to try or explore it in the future.\n"
    "\n";

constexpr std::array<std::string_view, 6> kUnfamiliar = {
    "i have never tried {topic} before, so i do not really know much about it",
    "honestly {topic} is new to me, i would not even know where to start",
    "no idea, i have no experience with {topic} at all",
    "i am not the right person to ask, {topic} is not something i have done",
    "sorry, i know nothing about {topic}, maybe ask someone else",
    "that is outside what i know, i have never been into {topic}",
};

constexpr std::array<std::string_view, 6> kWilling = {
    "i have not done {topic} yet but i would love to try it someday",
    "that sounds fun, i want to explore {topic} in the future",
    "i never tried {topic}, but it is on my list of things to try",
    "not yet, though {topic} looks like something i would enjoy exploring",
    "i am curious about {topic}, maybe i will give it a go soon",
    "i do not know much yet, but i would like to learn {topic} one day",
};

const std::set<std::string>& stopwords() {
  static const std::set<std::string> kWords = {
      "a",     "an",   "and",  "are",  "at",    "be",   "but",  "by",    "did",   "do",
      "for",   "from", "had",  "has",  "have",  "how",  "i",    "in",    "is",    "it",
      "its",   "me",   "my",   "no",   "not",   "of",   "on",   "or",    "our",   "so",
      "that",  "the",  "this", "to",   "was",   "we",   "what", "when",  "where", "who",
      "why",   "with", "you",  "your", "about", "ever", "just", "tried", "think", "know",
      "some",  "got",  "one",  "day",  "good",  "part", "best", "any",   "tell",  "more",
      "maybe", "ask",  "oh",   "yes",  "there", "they", "them", "then",  "than",  "been",
      "into",  "were", "will", "would", "could", "can",  "say",  "says",  "said",  "look",
      "photo", "took", "picture", "weekend", "time", "find", "want", "nice", "moments", "near",
  };
  return kWords;
}

std::string fill(std::string_view tmpl, std::string_view topic) {
  std::string out(tmpl);
  const std::string slot = "{topic}";
  for (auto pos = out.find(slot); pos != std::string::npos; pos = out.find(slot)) {
    out.replace(pos, slot.size(), topic);
  }
  return out;
}

}  // namespace

std::vector<std::string> content_words(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (cur.size() >= 2 && !stopwords().count(cur)) out.push_back(cur);
    cur.clear();
  };
  for (unsigned char c : text) {
    if (std::isalnum(c)) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else {
      flush();
    }
  }
  flush();
  return out;
}

std::string dialogue_topic(const Dialogue& dialogue) {
  if (dialogue.topic && !dialogue.topic->empty()) return *dialogue.topic;
  std::map<std::string, int> counts;
  std::vector<std::string> order;
  for (const auto& u : dialogue.context) {
    for (auto& w : content_words(u)) {
      // Skip speaker tags such as "a:" and "b:".
      if (w.size() < 3) continue;
      if (counts[w]++ == 0) order.push_back(w);
    }
  }
  std::string best = "that";
  int best_count = 0;
  for (const auto& w : order) {
    if (counts[w] > best_count) {
      best = w;
      best_count = counts[w];
    }
  }
  return best;
}

bool shares_topic_token(const Dialogue& dialogue, const std::vector<MemoryEntry>& memories) {
  std::set<std::string> words;
  for (const auto& u : dialogue.context) {
    for (auto& w : content_words(u)) words.insert(w);
  }
  if (dialogue.topic) words.insert(*dialogue.topic);
  for (const auto& m : memories) {
    if (m.is_sentinel()) continue;
    for (auto& w : content_words(m.text)) {
      if (words.count(w)) return true;
    }
    if (m.topic && words.count(*m.topic)) return true;
  }
  return false;
}

std::string build_early_prompt(std::string_view topic, const Dialogue& dialogue,
                               const std::vector<MemoryEntry>& memories) {
  std::string context;
  for (const auto& u : dialogue.context) {
    if (!context.empty()) context += ' ';
    context += u;
  }
  std::string mems;
  for (const auto& m : memories) {
    if (!mems.empty()) mems += "; ";
    mems += m.text + " (" + format_date(m.time) + ")";
  }
  std::string prompt(kPromptHead);
  prompt += "Conversation Topic: ";
  prompt += topic;
  prompt += "\nDialogue Context: ";
  prompt += context;
  prompt += "\nMemories: ";
  prompt += mems;
  return prompt;
}

EarlyResponse generate_early_response(const Dialogue& dialogue,
                                      const std::vector<MemoryEntry>& memories,
                                      ChatClient* client, const EarlyResponseOptions& opts) {
  const std::string topic = dialogue_topic(dialogue);
  if (client != nullptr) {
    try {
      const std::string reply = client->complete(build_early_prompt(topic, dialogue, memories));
      return EarlyResponse{truncate_words(reply, opts.max_words), EarlyResponseKind::kClient};
    } catch (const TransportError&) {
      if (!opts.fallback_to_template) throw;
    }
  }
  const bool related = shares_topic_token(dialogue, memories);
  const uint64_t h = seeded_hash(0x5eed, dialogue.id);
  const std::string_view tmpl =
      related ? kWilling[h % kWilling.size()] : kUnfamiliar[h % kUnfamiliar.size()];
  return EarlyResponse{truncate_words(fill(tmpl, topic), opts.max_words),
                       related ? EarlyResponseKind::kWilling : EarlyResponseKind::kUnfamiliar};
}

}  // namespace chronoret
