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

#ifndef CHRONORET_MODEL_HPP_
#define CHRONORET_MODEL_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "chronoret/feature_vector.hpp"
#include "chronoret/featurize.hpp"
#include "chronoret/fusion.hpp"

namespace chronoret {

enum class Similarity { kDot, kCosine };

std::string_view to_string(Similarity s);
Similarity parse_similarity(std::string_view s);

struct ModelConfig {
  HeadKind head = HeadKind::kAtm;
  AtmMode atm_mode = AtmMode::kScalarPerModality;
  Similarity similarity = Similarity::kCosine;
  double temperature = 0.07;
  // Learned affine maps text_in -> dim and vision_in -> dim ahead of the head.
  bool projections = false;
  std::size_t dim = 256;
  std::size_t text_in = 256;
  std::size_t vision_in = 256;

  void check() const;
  std::string fingerprint() const;
};

struct ParamBlock {
  std::string name;
  std::size_t offset = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t size() const { return rows * cols; }
};

// Per-thread buffers for forward and backward passes.
struct Scratch {
  std::vector<double> u, v, gu, gv, fused, grad_fused;
  std::vector<std::vector<double>> cands;
  std::vector<double> query, grad_query;
};

// Fusion head plus optional projections over one flat parameter vector.
class Model {
 public:
  // Head weights uniform in +-1/sqrt(fan_in); square projections start at
  // the identity.
  Model(const ModelConfig& cfg, uint64_t init_seed);
  Model(const ModelConfig& cfg, std::vector<double> params);

  const ModelConfig& config() const { return cfg_; }
  std::size_t n_params() const { return params_.size(); }
  std::span<double> params() { return params_; }
  std::span<const double> params() const { return params_; }
  const std::vector<ParamBlock>& layout() const { return layout_; }
  const ParamBlock* block(std::string_view name) const;

  // Fused representation of one (text, vision) input. An empty vision span
  // selects the text-only path used for response candidates.
  void represent(ConstVec text, ConstVec vision, MutVec out, Scratch& s) const;
  // Accumulates d(loss)/d(params) given d(loss)/d(out).
  void represent_backward(ConstVec text, ConstVec vision, ConstVec upstream, MutVec grad, Scratch& s) const;

 private:
  void build_layout();
  ConstVec seg(std::string_view name) const;
  MutVec seg(MutVec buf, std::string_view name) const;
  AtmView atm_view() const;
  LinearView linear_view() const;

  ModelConfig cfg_;
  std::vector<ParamBlock> layout_;
  std::vector<double> params_;
};

double score(ConstVec q, ConstVec c, Similarity sim, double temperature);
// Accumulates upstream * d(score)/dq and d(score)/dc.
void score_backward(ConstVec q, ConstVec c, Similarity sim, double temperature, double upstream,
                    MutVec grad_q, MutVec grad_c);

// -log softmax(scores)[label] with max subtraction.
double retrieval_loss(std::span<const double> scores, std::size_t label);
// softmax(scores) - onehot(label).
std::vector<double> retrieval_loss_grad(std::span<const double> scores, std::size_t label);

FeatureVector represent_query(const Model& m, const PreparedSet& set, const PreparedInstance& inst);
FeatureVector represent_candidate(const Model& m, const PreparedSet& set, const PreparedInstance& inst,
                                  std::size_t j);

std::vector<double> instance_scores(const Model& m, const PreparedSet& set, const PreparedInstance& inst,
                                    Scratch& s);
// Loss of one instance; accumulates its parameter gradient into grad.
double instance_loss_and_grad(const Model& m, const PreparedSet& set, const PreparedInstance& inst,
                              MutVec grad, Scratch& s);
double instance_loss(const Model& m, const PreparedSet& set, const PreparedInstance& inst, Scratch& s);

}  // namespace chronoret

#endif  // CHRONORET_MODEL_HPP_
