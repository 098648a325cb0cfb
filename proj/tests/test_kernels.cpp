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
#include "chronoret/kernels.hpp"
#include "chronoret/model.hpp"
#include "doctest.h"

namespace chronoret {
namespace {

ModelConfig config_for(HeadKind head, bool projections) {
  ModelConfig m;
  m.head = head;
  m.projections = projections;
  m.dim = 12;
  m.text_in = projections ? 10 : 12;
  m.vision_in = projections ? 14 : 12;
  return m;
}

TEST_CASE("parallel kernels reproduce the serial reference bit for bit") {
  for (int jobs : {1, 2, 4}) {
    set_parallel_jobs(jobs);
    for (HeadKind head : {HeadKind::kAtm, HeadKind::kAttention, HeadKind::kLinear, HeadKind::kMean}) {
      for (bool projections : {false, true}) {
        const ModelConfig cfg = config_for(head, projections);
        for (TaskKind task : {TaskKind::kTgmp, TaskKind::kTnrp}) {
          const PreparedSet set = random_prepared_set(task, cfg.text_in, cfg.vision_in, 8, 37, 5);
          const Model m(cfg, 9);
          CHECK(score_instances_serial(m, set) == score_instances_parallel(m, set));

          std::vector<std::size_t> batch;
          for (std::size_t i = 0; i < set.items.size(); i += 2) batch.push_back(i);
          std::vector<double> gs(m.n_params(), 1.0), gp(m.n_params(), -1.0);
          const double ls = batch_loss_grad_serial(m, set, batch, gs);
          const double lp = batch_loss_grad_parallel(m, set, batch, gp);
          CHECK(ls == lp);
          CHECK(gs == gp);
        }
      }
    }
  }
  set_parallel_jobs(0);
}

TEST_CASE("batch gradients are the mean of instance gradients") {
  const ModelConfig cfg = config_for(HeadKind::kAtm, true);
  const PreparedSet set = random_prepared_set(TaskKind::kTgmp, cfg.text_in, cfg.vision_in, 5, 4, 2);
  const Model m(cfg, 1);
  const std::vector<std::size_t> batch = {0, 1, 2, 3};
  std::vector<double> g(m.n_params());
  const double loss = batch_loss_grad_serial(m, set, batch, g);
  std::vector<double> sum(m.n_params(), 0.0);
  double total = 0.0;
  Scratch s;
  for (std::size_t i : batch) total += instance_loss_and_grad(m, set, set.items[i], sum, s);
  CHECK(loss == doctest::Approx(total / 4).epsilon(1e-12));
  for (std::size_t k = 0; k < g.size(); ++k) CHECK(g[k] == doctest::Approx(sum[k] / 4).epsilon(1e-12));
}

}  // namespace
}  // namespace chronoret
