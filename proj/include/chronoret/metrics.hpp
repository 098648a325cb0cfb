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

#ifndef CHRONORET_METRICS_HPP_
#define CHRONORET_METRICS_HPP_

#include <cstddef>
#include <span>

namespace chronoret {

// Pessimistic 1-based rank: equal scores rank the label after the others.
std::size_t rank_of_label(std::span<const double> scores, std::size_t label);

double recall_at_1(std::span<const std::size_t> ranks);
double mean_reciprocal_rank(std::span<const std::size_t> ranks);

}  // namespace chronoret

#endif  // CHRONORET_METRICS_HPP_
