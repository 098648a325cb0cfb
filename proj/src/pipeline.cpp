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

#include "chronoret/pipeline.hpp"

#include "chronoret/error.hpp"

namespace chronoret {

Workspace::Workspace(Corpus corpus, std::unique_ptr<ImageSource> images)
    : corpus_(std::move(corpus)), images_(std::move(images)) {}

std::size_t Workspace::text_dim(const FeatureConfig& f) const { return text_store_ ? text_store_->dim() : f.dim; }

std::size_t Workspace::vision_dim(const FeatureConfig& f) const {
  return image_store_ ? image_store_->dim() : f.dim;
}

PreparedSet Workspace::prepare(TaskKind task, std::optional<Split> split, const SerializationConfig& ser,
                               const FeatureConfig& features) const {
  Encoders enc(features, images_.get(), text_store_ ? &*text_store_ : nullptr,
               image_store_ ? &*image_store_ : nullptr);
  if (task == TaskKind::kTnrp) {
    if (tnrp_.empty()) throw ConfigError("no TNRP instances loaded; run build-tasks first");
    return prepare_tnrp(corpus_, split ? filter_split(corpus_, tnrp_, *split) : tnrp_, enc, ser, features);
  }
  if (tgmp_.empty()) throw ConfigError("no TGMP instances loaded; run build-tasks first");
  return prepare_tgmp(corpus_, split ? filter_split(corpus_, tgmp_, *split) : tgmp_, enc, ser, features);
}

}  // namespace chronoret
