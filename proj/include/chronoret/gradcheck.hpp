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

#ifndef CHRONORET_GRADCHECK_HPP_
#define CHRONORET_GRADCHECK_HPP_

#include <cstdint>
#include <string>

#include "chronoret/featurize.hpp"
#include "chronoret/model.hpp"

namespace chronoret {

struct GradCheckOptions {
  double step = 1e-5;
  // Coordinates compared; 0 checks every parameter.
  std::size_t max_coords = 0;
  uint64_t seed = 0;
  // Denominator floor so near-zero gradients compare absolutely.
  double floor = 1e-5;
};

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::size_t n_checked = 0;
  std::string worst_param;
};

// Analytic loss gradient against central differences for one instance.
GradCheckResult grad_check(const Model& m, const PreparedSet& set, const PreparedInstance& inst,
                           const GradCheckOptions& opts = {});

// A set of random instances over a random bank, for harness use.
PreparedSet random_prepared_set(TaskKind task, std::size_t text_dim, std::size_t vision_dim, std::size_t n_candidates,
                                std::size_t n_instances, uint64_t seed);

}  // namespace chronoret

#endif  // CHRONORET_GRADCHECK_HPP_
