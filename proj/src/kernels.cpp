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

#include "chronoret/kernels.hpp"

#include <algorithm>
#include <omp.h>

namespace chronoret {

void set_parallel_jobs(int jobs) {
  if (jobs > 0) omp_set_num_threads(jobs);
}

std::vector<std::vector<double>> score_instances_serial(const Model& m, const PreparedSet& set) {
  std::vector<std::vector<double>> out(set.items.size());
  Scratch s;
  for (std::size_t i = 0; i < set.items.size(); ++i) out[i] = instance_scores(m, set, set.items[i], s);
  return out;
}

std::vector<std::vector<double>> score_instances_parallel(const Model& m, const PreparedSet& set) {
  std::vector<std::vector<double>> out(set.items.size());
  const auto n = static_cast<std::ptrdiff_t>(set.items.size());
#pragma omp parallel
  {
    Scratch s;
#pragma omp for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = instance_scores(m, set, set.items[i], s);
  }
  return out;
}

double batch_loss_grad_serial(const Model& m, const PreparedSet& set, std::span<const std::size_t> batch,
                              std::span<double> grad) {
  std::fill(grad.begin(), grad.end(), 0.0);
  if (batch.empty()) return 0.0;
  std::vector<double> one(grad.size());
  Scratch s;
  double loss = 0.0;
  for (std::size_t idx : batch) {
    std::fill(one.begin(), one.end(), 0.0);
    loss += instance_loss_and_grad(m, set, set.items[idx], one, s);
    for (std::size_t k = 0; k < grad.size(); ++k) grad[k] += one[k];
  }
  const double inv = 1.0 / static_cast<double>(batch.size());
  for (double& g : grad) g *= inv;
  return loss * inv;
}

double batch_loss_grad_parallel(const Model& m, const PreparedSet& set, std::span<const std::size_t> batch,
                                std::span<double> grad) {
  std::fill(grad.begin(), grad.end(), 0.0);
  if (batch.empty()) return 0.0;
  const std::size_t p = grad.size();
  std::vector<double> per(p * batch.size(), 0.0);
  std::vector<double> losses(batch.size(), 0.0);
  const auto n = static_cast<std::ptrdiff_t>(batch.size());
#pragma omp parallel
  {
    Scratch s;
#pragma omp for schedule(static)
    for (std::ptrdiff_t b = 0; b < n; ++b) {
      std::span<double> one(per.data() + static_cast<std::size_t>(b) * p, p);
      losses[b] = instance_loss_and_grad(m, set, set.items[batch[b]], one, s);
    }
  }
  double loss = 0.0;
  for (std::size_t b = 0; b < batch.size(); ++b) {
    loss += losses[b];
    const double* one = per.data() + b * p;
    for (std::size_t k = 0; k < p; ++k) grad[k] += one[k];
  }
  const double inv = 1.0 / static_cast<double>(batch.size());
  for (double& g : grad) g *= inv;
  return loss * inv;
}

}  // namespace chronoret
