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

#include <cstdlib>

#include "chronoret/early_response.hpp"
#include "chronoret/error.hpp"
#include "httplib.h"
#include "json.hpp"

namespace chronoret {
namespace {

struct ParsedUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

ParsedUrl split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw ConfigError("endpoint URL lacks a scheme: " + url);
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return ParsedUrl{url, "/"};
  return ParsedUrl{url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

HttpChatClient::HttpChatClient(std::string url, std::string token, int timeout_seconds)
    : url_(std::move(url)), token_(std::move(token)), timeout_seconds_(timeout_seconds) {
  if (token_.empty()) {
    if (const char* env = std::getenv(std::string(kTokenEnvVar).c_str())) token_ = env;
  }
}

std::string HttpChatClient::complete(const std::string& prompt) {
  const ParsedUrl parsed = split_url(url_);
  httplib::Client cli(parsed.origin);
  cli.set_connection_timeout(timeout_seconds_);
  cli.set_read_timeout(timeout_seconds_);
  httplib::Headers headers;
  if (!token_.empty()) headers.emplace("Authorization", "Bearer " + token_);
  const nlohmann::json body{{"prompt", prompt}};
  auto res = cli.Post(parsed.path, headers, body.dump(), "application/json");
  if (!res) throw TransportError("chat endpoint unreachable: " + httplib::to_string(res.error()));
  if (res->status == 401 || res->status == 403) {
    throw TransportError("chat endpoint rejected credentials (HTTP " + std::to_string(res->status) + ")");
  }
  if (res->status != 200) throw TransportError("chat endpoint returned HTTP " + std::to_string(res->status));
  try {
    const auto j = nlohmann::json::parse(res->body);
    if (j.contains("reply") && j["reply"].is_string()) return j["reply"].get<std::string>();
    if (j.contains("choices") && !j["choices"].empty()) {
      return j["choices"][0]["message"]["content"].get<std::string>();
    }
  } catch (const nlohmann::json::exception& ex) {
    throw TransportError(std::string("malformed chat reply: ") + ex.what());
  }
  throw TransportError("chat reply has no 'reply' field");
}

}  // namespace chronoret
