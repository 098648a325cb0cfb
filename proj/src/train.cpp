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

#include "chronoret/train.hpp"

#include <cmath>
#include <numeric>

#include "chronoret/error.hpp"
#include "chronoret/hash.hpp"
#include "chronoret/kernels.hpp"
#include "chronoret/rng.hpp"
#include "json.hpp"

namespace chronoret {

TrainConfig TrainConfig::desk() { return TrainConfig{}; }

TrainConfig TrainConfig::paper() {
  TrainConfig c;
  c.learning_rate = 3e-6;
  c.n_candidates = 100;
  return c;
}

TrainConfig TrainConfig::preset(std::string_view name) {
  if (name == "desk") return desk();
  if (name == "paper") return paper();
  throw ConfigError("unknown preset '" + std::string(name) + "' (expected desk or paper)");
}

void TrainConfig::check() const {
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
  if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be > 0");
  if (weight_decay < 0.0) throw ConfigError("weight_decay must be >= 0");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
    throw ConfigError("adam betas must lie in [0, 1)");
  }
  if (!(adam_eps > 0.0)) throw ConfigError("adam epsilon must be > 0");
  if (n_candidates < 2) throw ConfigError("C must be >= 2");
}

std::string TrainConfig::fingerprint() const {
  nlohmann::json j = {{"epochs", epochs},     {"batch_size", batch_size}, {"learning_rate", learning_rate},
                      {"weight_decay", weight_decay}, {"beta1", beta1}, {"beta2", beta2},
                      {"adam_eps", adam_eps}, {"seed", seed},             {"C", n_candidates},
                      {"m", max_memories}};
  return hex64(seeded_hash(0x79a1, j.dump()));
}

namespace {

std::string log_line(int epoch, std::size_t batch, double loss) {
  nlohmann::json j = {{"epoch", epoch}, {"batch", batch}, {"loss", loss}};
  return j.dump();
}

[[noreturn]] void non_finite(const Model& m, const PreparedSet& set, std::span<const std::size_t> batch,
                             int epoch, std::size_t b) {
  Scratch s;
  std::string who = "?";
  for (std::size_t idx : batch) {
    if (!std::isfinite(instance_loss(m, set, set.items[idx], s))) {
      who = set.items[idx].episode_id;
      break;
    }
  }
  throw TrainingError("non-finite loss at epoch " + std::to_string(epoch) + ", batch " + std::to_string(b) +
                      ", instance " + who);
}

}  // namespace

TrainResult train(const PreparedSet& set, const ModelConfig& model_cfg, const TrainConfig& cfg,
                  const TrainLogSink& log, bool parallel) {
  cfg.check();
  if (set.items.empty()) throw ConfigError("no training instances");
  TrainResult out{Model(model_cfg, cfg.seed), {}, 0};
  Model& model = out.model;

  if (model.n_params() == 0) {
    Scratch s;
    double total = 0.0;
    for (const auto& inst : set.items) total += instance_loss(model, set, inst, s);
    const double mean_loss = total / static_cast<double>(set.items.size());
    out.loss_history.assign(static_cast<std::size_t>(cfg.epochs), mean_loss);
    out.epochs_run = cfg.epochs;
    return out;
  }

  const std::size_t p = model.n_params();
  std::vector<double> grad(p), m1(p, 0.0), m2(p, 0.0);
  std::vector<std::size_t> order(set.items.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(hash_combine(cfg.seed, 0x5a0ff1e));
  const auto bs = static_cast<std::size_t>(cfg.batch_size);
  long step = 0;

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    rng.shuffle(order);
    double epoch_loss = 0.0;
    std::size_t b = 0;
    for (std::size_t start = 0; start < order.size(); start += bs, ++b) {
      const std::size_t len = std::min(bs, order.size() - start);
      std::span<const std::size_t> batch(order.data() + start, len);
      const double loss = parallel ? batch_loss_grad_parallel(model, set, batch, grad)
                                   : batch_loss_grad_serial(model, set, batch, grad);
      if (!std::isfinite(loss)) non_finite(model, set, batch, epoch, b);
      epoch_loss += loss * static_cast<double>(len);

      ++step;
      const double c1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(step));
      const double c2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(step));
      auto params = model.params();
      for (std::size_t k = 0; k < p; ++k) {
        m1[k] = cfg.beta1 * m1[k] + (1.0 - cfg.beta1) * grad[k];
        m2[k] = cfg.beta2 * m2[k] + (1.0 - cfg.beta2) * grad[k] * grad[k];
        params[k] -= cfg.learning_rate * cfg.weight_decay * params[k];
        params[k] -= cfg.learning_rate * (m1[k] / c1) / (std::sqrt(m2[k] / c2) + cfg.adam_eps);
      }
      if (log) log(log_line(epoch, b, loss));
    }
    out.loss_history.push_back(epoch_loss / static_cast<double>(order.size()));
    out.epochs_run = epoch;
  }
  return out;
}

}  // namespace chronoret
