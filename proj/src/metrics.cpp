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

#include "chronoret/metrics.hpp"

#include "chronoret/error.hpp"

namespace chronoret {

std::size_t rank_of_label(std::span<const double> scores, std::size_t label) {
  if (label >= scores.size()) throw ConfigError("label index out of range");
  const double target = scores[label];
  std::size_t rank = 1;
  for (std::size_t j = 0; j < scores.size(); ++j) {
    if (j != label && scores[j] >= target) ++rank;
  }
  return rank;
}

double recall_at_1(std::span<const std::size_t> ranks) {
  if (ranks.empty()) throw ConfigError("recall@1 of an empty rank list");
  std::size_t hits = 0;
  for (std::size_t r : ranks) {
    if (r < 1) throw ConfigError("ranks must be >= 1");
    hits += r == 1;
  }
  return static_cast<double>(hits) / static_cast<double>(ranks.size());
}

double mean_reciprocal_rank(std::span<const std::size_t> ranks) {
  if (ranks.empty()) throw ConfigError("MRR of an empty rank list");
  double total = 0.0;
  for (std::size_t r : ranks) {
    if (r < 1) throw ConfigError("ranks must be >= 1");
    total += 1.0 / static_cast<double>(r);
  }
  return total / static_cast<double>(ranks.size());
}

}  // namespace chronoret
