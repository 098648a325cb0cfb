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

#ifndef CHRONORET_EMBEDDING_STORE_HPP_
#define CHRONORET_EMBEDDING_STORE_HPP_

#include <map>
#include <string>
#include <string_view>

#include "chronoret/feature_vector.hpp"

namespace chronoret {

// Immutable after loading; safe for concurrent readers.
class EmbeddingStore {
 public:
  EmbeddingStore() = default;
  explicit EmbeddingStore(std::size_t dim) : dim_(dim) {}

  // Throws ParseError on a dimension mismatch or non-finite values.
  void add(const std::string& id, FeatureVector v);
  const FeatureVector* find(std::string_view id) const;
  const FeatureVector& at(std::string_view id) const;
  std::size_t size() const { return vectors_.size(); }
  std::size_t dim() const { return dim_; }

 private:
  std::size_t dim_ = 0;
  std::map<std::string, FeatureVector, std::less<>> vectors_;
};

// JSONL records {"id": ..., "dim": n, "values": [...]}.
EmbeddingStore load_external_embeddings(const std::string& path);
EmbeddingStore parse_external_embeddings(std::string_view jsonl, const std::string& origin = "<memory>");

// Key under which an external text embedding is looked up: a hash of the
// exact serialized string.
std::string text_fingerprint(std::string_view serialized);

}  // namespace chronoret

#endif  // CHRONORET_EMBEDDING_STORE_HPP_
