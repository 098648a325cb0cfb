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

#ifndef CHRONORET_EARLY_RESPONSE_HPP_
#define CHRONORET_EARLY_RESPONSE_HPP_

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "chronoret/corpus.hpp"

namespace chronoret {

// Single-turn chat completion: prompt in, reply out.
class ChatClient {
 public:
  virtual ~ChatClient() = default;
  virtual std::string complete(const std::string& prompt) = 0;
};

// POSTs {"prompt": ...} to an HTTP(S) endpoint and reads {"reply": ...}.
// The bearer token is taken from CHRONO_LLM_TOKEN when not given explicitly.
class HttpChatClient : public ChatClient {
 public:
  explicit HttpChatClient(std::string url, std::string token = {}, int timeout_seconds = 30);
  std::string complete(const std::string& prompt) override;

 private:
  std::string url_;
  std::string token_;
  int timeout_seconds_;
};

inline constexpr std::string_view kTokenEnvVar = "CHRONO_LLM_TOKEN";

enum class EarlyResponseKind { kUnfamiliar, kWilling, kClient };

struct EarlyResponse {
  std::string text;
  EarlyResponseKind kind = EarlyResponseKind::kUnfamiliar;
};

struct EarlyResponseOptions {
  // On a transport failure use the offline template instead of rethrowing.
  bool fallback_to_template = true;
  std::size_t max_words = kEarlyResponseMaxWords;
};

// Fills the generation prompt with the topic, the dialogue context and the
// speaker's memories.
std::string build_early_prompt(std::string_view topic, const Dialogue& dialogue,
                               const std::vector<MemoryEntry>& memories);

// Conversation topic used in the prompt and the templates: the dialogue's
// topic field, else its most frequent content word.
std::string dialogue_topic(const Dialogue& dialogue);

// True when some memory shares a content word with the dialogue.
bool shares_topic_token(const Dialogue& dialogue, const std::vector<MemoryEntry>& memories);

EarlyResponse generate_early_response(const Dialogue& dialogue,
                                      const std::vector<MemoryEntry>& memories,
                                      ChatClient* client,
                                      const EarlyResponseOptions& opts = {});

// Lowercased alphanumeric words minus a small stopword list.
std::vector<std::string> content_words(std::string_view text);

}  // namespace chronoret

#endif  // CHRONORET_EARLY_RESPONSE_HPP_
