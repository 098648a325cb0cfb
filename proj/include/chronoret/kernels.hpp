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

#ifndef CHRONORET_KERNELS_HPP_
#define CHRONORET_KERNELS_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "chronoret/featurize.hpp"
#include "chronoret/model.hpp"

namespace chronoret {

// Sets the OpenMP team size; 0 keeps the runtime default.
void set_parallel_jobs(int jobs);

// Candidate scores for every instance in the set.
std::vector<std::vector<double>> score_instances_serial(const Model& m, const PreparedSet& set);
std::vector<std::vector<double>> score_instances_parallel(const Model& m, const PreparedSet& set);

// Mean loss over batch; grad receives the mean gradient (overwritten).
double batch_loss_grad_serial(const Model& m, const PreparedSet& set, std::span<const std::size_t> batch,
                              std::span<double> grad);
// Same result bit for bit: per-instance buffers reduced in batch order.
double batch_loss_grad_parallel(const Model& m, const PreparedSet& set, std::span<const std::size_t> batch,
                                std::span<double> grad);

}  // namespace chronoret

#endif  // CHRONORET_KERNELS_HPP_
