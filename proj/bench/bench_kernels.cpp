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

#include <benchmark/benchmark.h>

#include <numeric>

#include "chronoret/gradcheck.hpp"
#include "chronoret/kernels.hpp"
#include "chronoret/model.hpp"

namespace chronoret {
namespace {

constexpr std::size_t kDim = 256;
constexpr std::size_t kCandidates = 20;
constexpr std::size_t kInstances = 256;

const PreparedSet& bench_set() {
  static const PreparedSet set = random_prepared_set(TaskKind::kTgmp, kDim, kDim, kCandidates, kInstances, 11);
  return set;
}

Model bench_model(HeadKind head) {
  ModelConfig cfg;
  cfg.head = head;
  cfg.dim = cfg.text_in = cfg.vision_in = kDim;
  cfg.projections = true;
  return Model(cfg, 3);
}

template <bool Parallel>
void BM_ScoreInstances(benchmark::State& state) {
  const Model m = bench_model(static_cast<HeadKind>(state.range(0)));
  for (auto _ : state) {
    auto scores = Parallel ? score_instances_parallel(m, bench_set()) : score_instances_serial(m, bench_set());
    benchmark::DoNotOptimize(scores);
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * kInstances));
}

template <bool Parallel>
void BM_BatchLossGrad(benchmark::State& state) {
  const Model m = bench_model(static_cast<HeadKind>(state.range(0)));
  std::vector<std::size_t> batch(static_cast<std::size_t>(state.range(1)));
  std::iota(batch.begin(), batch.end(), 0);
  std::vector<double> grad(m.n_params());
  for (auto _ : state) {
    const double loss = Parallel ? batch_loss_grad_parallel(m, bench_set(), batch, grad)
                                 : batch_loss_grad_serial(m, bench_set(), batch, grad);
    benchmark::DoNotOptimize(loss);
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * batch.size()));
}

void heads(benchmark::internal::Benchmark* b) {
  for (HeadKind h : {HeadKind::kAtm, HeadKind::kLinear}) b->Arg(static_cast<int64_t>(h));
}

void heads_and_batches(benchmark::internal::Benchmark* b) {
  for (HeadKind h : {HeadKind::kAtm, HeadKind::kLinear}) {
    for (int64_t batch : {8, 64}) b->Args({static_cast<int64_t>(h), batch});
  }
}

BENCHMARK(BM_ScoreInstances<false>)->Apply(heads)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScoreInstances<true>)->Apply(heads)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BatchLossGrad<false>)->Apply(heads_and_batches)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BatchLossGrad<true>)->Apply(heads_and_batches)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace chronoret

BENCHMARK_MAIN();
