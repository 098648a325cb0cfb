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

#ifndef CHRONORET_PIPELINE_HPP_
#define CHRONORET_PIPELINE_HPP_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "chronoret/corpus.hpp"
#include "chronoret/embedding_store.hpp"
#include "chronoret/featurize.hpp"
#include "chronoret/image.hpp"
#include "chronoret/tasks.hpp"

namespace chronoret {

// Corpus, images, optional external embeddings and task instances, with
// featurization per split and serialization.
class Workspace {
 public:
  Workspace(Corpus corpus, std::unique_ptr<ImageSource> images);

  void set_text_embeddings(EmbeddingStore s) { text_store_ = std::move(s); }
  void set_image_embeddings(EmbeddingStore s) { image_store_ = std::move(s); }
  void set_tnrp(std::vector<TnrpInstance> v) { tnrp_ = std::move(v); }
  void set_tgmp(std::vector<TgmpInstance> v) { tgmp_ = std::move(v); }

  const Corpus& corpus() const { return corpus_; }
  const std::vector<TnrpInstance>& tnrp() const { return tnrp_; }
  const std::vector<TgmpInstance>& tgmp() const { return tgmp_; }
  // Feature dims after accounting for external embeddings.
  std::size_t text_dim(const FeatureConfig& f) const;
  std::size_t vision_dim(const FeatureConfig& f) const;

  // Featurized instances of one task, optionally restricted to a split.
  PreparedSet prepare(TaskKind task, std::optional<Split> split, const SerializationConfig& ser,
                      const FeatureConfig& features) const;

 private:
  Corpus corpus_;
  std::unique_ptr<ImageSource> images_;
  std::optional<EmbeddingStore> text_store_;
  std::optional<EmbeddingStore> image_store_;
  std::vector<TnrpInstance> tnrp_;
  std::vector<TgmpInstance> tgmp_;
};

}  // namespace chronoret

#endif  // CHRONORET_PIPELINE_HPP_
