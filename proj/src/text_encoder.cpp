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

#include "chronoret/text_encoder.hpp"

#include <cctype>

#include "chronoret/error.hpp"
#include "chronoret/hash.hpp"

namespace chronoret {
namespace {

bool is_date_token(std::string_view s) {
  if (s.size() != 10 || s[4] != '/' || s[7] != '/') return false;
  for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9}) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

bool is_markup(std::string_view s) {
  if (s.size() < 3 || s.front() != '[' || s.back() != ']') return false;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    if (!std::isupper(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim_punct(std::string_view s) {
  auto punct = [](char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; };
  while (!s.empty() && punct(s.front())) s.remove_prefix(1);
  while (!s.empty() && punct(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i) break;
    const std::string_view chunk = s.substr(i, j - i);
    i = j;
    if (is_markup(chunk)) continue;
    const std::string_view core = trim_punct(chunk);
    if (is_date_token(core)) {
      out.emplace_back(core);
      continue;
    }
    if (core.find("|rel:") != std::string_view::npos || core.rfind("rel:", 0) == 0) {
      out.push_back(lower(core));
      continue;
    }
    std::string cur;
    for (unsigned char c : chunk) {
      if (std::isalnum(c)) {
        cur.push_back(static_cast<char>(std::tolower(c)));
      } else if (!cur.empty()) {
        out.push_back(std::move(cur));
        cur.clear();
      }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
  }
  return out;
}

FeatureVector encode_text_reference(std::string_view s, std::size_t dim, uint64_t seed) {
  if (dim < kMinEncoderDim) throw ConfigError("text encoder dim must be >= " + std::to_string(kMinEncoderDim));
  FeatureVector v(dim);
  for (const auto& tok : tokenize(s)) {
    const uint64_t h = seeded_hash(seed, tok);
    const std::size_t index = static_cast<std::size_t>(h % dim);
    const double sign = (splitmix64(h) >> 63) != 0 ? -1.0 : 1.0;
    v[index] += sign;
  }
  v.normalize();
  return v;
}

}  // namespace chronoret
