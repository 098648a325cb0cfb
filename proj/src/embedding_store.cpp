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

#include "chronoret/embedding_store.hpp"

#include <sstream>

#include "chronoret/error.hpp"
#include "chronoret/fs_util.hpp"
#include "chronoret/hash.hpp"
#include "json.hpp"

namespace chronoret {

void EmbeddingStore::add(const std::string& id, FeatureVector v) {
  if (dim_ == 0) dim_ = v.dim();
  if (v.dim() != dim_) {
    throw ParseError("embedding '" + id + "' has dim " + std::to_string(v.dim()) + ", expected " +
                     std::to_string(dim_));
  }
  if (!v.all_finite()) throw ParseError("embedding '" + id + "' has non-finite values");
  vectors_[id] = std::move(v);
}

const FeatureVector* EmbeddingStore::find(std::string_view id) const {
  auto it = vectors_.find(id);
  return it == vectors_.end() ? nullptr : &it->second;
}

const FeatureVector& EmbeddingStore::at(std::string_view id) const {
  const FeatureVector* v = find(id);
  if (v == nullptr) throw IntegrityError("no external embedding for '" + std::string(id) + "'");
  return *v;
}

EmbeddingStore parse_external_embeddings(std::string_view jsonl, const std::string& origin) {
  EmbeddingStore store;
  std::istringstream in{std::string(jsonl)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = origin + ":" + std::to_string(lineno) + ": ";
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& ex) {
      throw ParseError(where + "invalid JSON: " + ex.what());
    }
    if (!j.contains("id") || !j["id"].is_string()) throw ParseError(where + "missing id");
    const std::string id = j["id"].get<std::string>();
    if (!j.contains("values") || !j["values"].is_array()) throw ParseError(where + "missing values for '" + id + "'");
    std::vector<double> values;
    for (const auto& x : j["values"]) {
      if (!x.is_number()) throw ParseError(where + "non-numeric value in '" + id + "'");
      values.push_back(x.get<double>());
    }
    if (j.contains("dim") && j["dim"].get<std::size_t>() != values.size()) {
      throw ParseError(where + "declared dim does not match values for '" + id + "'");
    }
    try {
      store.add(id, FeatureVector(std::move(values)));
    } catch (const ParseError& ex) {
      throw ParseError(where + ex.what());
    }
  }
  return store;
}

EmbeddingStore load_external_embeddings(const std::string& path) {
  return parse_external_embeddings(read_file(path), path);
}

std::string text_fingerprint(std::string_view serialized) {
  return hex64(seeded_hash(0x7e47, serialized));
}

}  // namespace chronoret
