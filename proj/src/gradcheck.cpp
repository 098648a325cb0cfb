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

#include "chronoret/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "chronoret/rng.hpp"

namespace chronoret {

GradCheckResult grad_check(const Model& m, const PreparedSet& set, const PreparedInstance& inst,
                           const GradCheckOptions& opts) {
  GradCheckResult r;
  const std::size_t p = m.n_params();
  if (p == 0) return r;
  Scratch s;
  std::vector<double> analytic(p, 0.0);
  instance_loss_and_grad(m, set, inst, analytic, s);

  std::vector<std::size_t> coords(p);
  std::iota(coords.begin(), coords.end(), std::size_t{0});
  if (opts.max_coords > 0 && opts.max_coords < p) {
    Rng rng(opts.seed);
    std::vector<std::size_t> pick = rng.sample_indices(p, opts.max_coords);
    std::sort(pick.begin(), pick.end());
    coords = std::move(pick);
  }

  Model probe = m;
  auto w = probe.params();
  for (std::size_t k : coords) {
    const double orig = w[k];
    w[k] = orig + opts.step;
    const double up = instance_loss(probe, set, inst, s);
    w[k] = orig - opts.step;
    const double down = instance_loss(probe, set, inst, s);
    w[k] = orig;
    const double numeric = (up - down) / (2.0 * opts.step);
    const double denom = std::max({std::abs(analytic[k]), std::abs(numeric), opts.floor});
    const double rel = std::abs(analytic[k] - numeric) / denom;
    ++r.n_checked;
    if (rel > r.max_rel_error || r.worst_param.empty()) {
      r.max_rel_error = std::max(r.max_rel_error, rel);
      for (const auto& b : m.layout()) {
        if (k >= b.offset && k < b.offset + b.size()) {
          r.worst_param = b.name + "[" + std::to_string(k - b.offset) + "]";
        }
      }
    }
  }
  return r;
}

namespace {

FeatureVector random_unit(Rng& rng, std::size_t dim) {
  FeatureVector v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = rng.normal();
  v.normalize();
  return v;
}

}  // namespace

PreparedSet random_prepared_set(TaskKind task, std::size_t text_dim, std::size_t vision_dim, std::size_t n_candidates,
                                std::size_t n_instances, uint64_t seed) {
  Rng rng(seed);
  PreparedSet set;
  set.task = task;
  set.bank = FeatureBank(text_dim, vision_dim);
  uint32_t next_text = 0;
  uint32_t next_vision = 0;
  auto text = [&] { return set.bank.add_text("t" + std::to_string(next_text++), random_unit(rng, text_dim)); };
  auto vision = [&] {
    return set.bank.add_vision("v" + std::to_string(next_vision++), random_unit(rng, vision_dim));
  };
  for (std::size_t i = 0; i < n_instances; ++i) {
    PreparedInstance inst;
    inst.episode_id = "r" + std::to_string(i);
    inst.pair_key = inst.episode_id;
    inst.query_text = text();
    inst.query_vision = vision();
    for (std::size_t j = 0; j < n_candidates; ++j) {
      inst.cand_text.push_back(text());
      inst.cand_vision.push_back(task == TaskKind::kTgmp ? vision() : kNoRow);
    }
    inst.label = rng.index(n_candidates);
    set.items.push_back(std::move(inst));
  }
  return set;
}

}  // namespace chronoret
