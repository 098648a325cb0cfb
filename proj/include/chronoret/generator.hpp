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

#ifndef CHRONORET_GENERATOR_HPP_
#define CHRONORET_GENERATOR_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "chronoret/corpus.hpp"
#include "chronoret/early_response.hpp"
#include "chronoret/image.hpp"

namespace chronoret {

enum class ModalityMode { kBalanced, kModalitySwitch };

std::string_view to_string(ModalityMode m);
ModalityMode parse_modality_mode(std::string_view s);

struct GeneratorConfig {
  int n_users = 400;
  int memories_per_user = 4;
  int n_episodes = 2400;
  int n_topics = 48;
  int topic_vocab = 8;            // words per topic, the topic name included
  int topics_per_user = 4;        // distinct interests, spread across memories
  int caption_topic_words = 3;    // topic words per memory caption
  int year_start = 2005;
  int year_end = 2020;
  int early_offset_min_years = 1;
  int early_offset_max_years = 5;
  ModalityMode modality_mode = ModalityMode::kBalanced;
  int image_size = 32;
  double image_noise_blocks = 0.25;  // fraction of blocks painted off-palette
  double dialogue_overlap = 0.9;     // chance a dialogue mention reuses a caption word
  int dialogue_mentions = 6;         // topic words per utterance
  double val_fraction = 0.1;
  double test_fraction = 0.1;

  // Throws ConfigError when the settings cannot produce a valid corpus.
  void check() const;
  std::string fingerprint() const;
};

struct GeneratedCorpus {
  Corpus corpus;
  MemoryImageSource images;
};

// Pure function of (cfg, seed). A non-null client writes the early-stage
// responses; otherwise the offline templates are used.
GeneratedCorpus generate_synthetic_corpus(const GeneratorConfig& cfg, uint64_t seed,
                                          ChatClient* client = nullptr);

// Writes every image of a generated corpus under root.
void write_corpus_images(const MemoryImageSource& images, const std::string& root);

}  // namespace chronoret

#endif  // CHRONORET_GENERATOR_HPP_
