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

#ifndef CHRONORET_FUSION_HPP_
#define CHRONORET_FUSION_HPP_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace chronoret {

enum class HeadKind { kAtm, kAttention, kLinear, kMean };
enum class AtmMode { kScalarPerModality, kPerDimComplementary };

std::string_view to_string(HeadKind h);
std::string_view to_string(AtmMode m);
HeadKind parse_head_kind(std::string_view s);
AtmMode parse_atm_mode(std::string_view s);

using ConstVec = std::span<const double>;
using MutVec = std::span<double>;

// Gate rows: 2 in scalar mode, D in per-dimension mode.
inline std::size_t atm_gate_rows(AtmMode mode, std::size_t dim) {
  return mode == AtmMode::kScalarPerModality ? 2 : dim;
}

// Non-owning parameter views. Gradient views have the same shapes.
struct AtmView {
  AtmMode mode = AtmMode::kScalarPerModality;
  std::size_t dim = 0;
  ConstVec gate_weight;  // G x 2D, row-major
  ConstVec gate_bias;    // G
};
struct AtmGrad {
  MutVec gate_weight;
  MutVec gate_bias;
};
struct AttentionView {
  ConstVec query;  // D
};
struct AttentionGrad {
  MutVec query;
};
struct LinearView {
  std::size_t dim = 0;
  ConstVec text_map;     // D x D
  ConstVec text_bias;    // D
  ConstVec vision_map;   // D x D
  ConstVec vision_bias;  // D
};
struct LinearGrad {
  MutVec text_map;
  MutVec text_bias;
  MutVec vision_map;
  MutVec vision_bias;
};

// Owning parameter sets for direct use of the heads.
struct AtmParams {
  AtmMode mode = AtmMode::kScalarPerModality;
  std::size_t dim = 0;
  std::vector<double> gate_weight;
  std::vector<double> gate_bias;

  static AtmParams zeros(AtmMode mode, std::size_t dim);
  AtmView view() const { return {mode, dim, gate_weight, gate_bias}; }
};
struct AttentionParams {
  std::vector<double> query;
  AttentionView view() const { return {query}; }
};
struct LinearFusionParams {
  std::size_t dim = 0;
  std::vector<double> text_map;
  std::vector<double> text_bias;
  std::vector<double> vision_map;
  std::vector<double> vision_bias;

  static LinearFusionParams zeros(std::size_t dim);
  LinearView view() const { return {dim, text_map, text_bias, vision_map, vision_bias}; }
};

// Forward passes write the fused vector into out (length D). All throw
// ConfigError on a dimension mismatch.
void fuse_atm(ConstVec u, ConstVec v, const AtmView& p, MutVec out);
void fuse_attention(ConstVec u, ConstVec v, const AttentionView& p, MutVec out);
void fuse_linear(ConstVec u, ConstVec v, const LinearView& p, MutVec out);
void fuse_mean(ConstVec u, ConstVec v, MutVec out);

// Gate values sigmoid(W [u; v] + b), length G.
std::vector<double> atm_gates(ConstVec u, ConstVec v, const AtmView& p);
// Attention weights (alpha_text, alpha_vision).
std::pair<double, double> attention_weights(ConstVec u, ConstVec v, const AttentionView& p);

// Backward passes contract the upstream gradient with the Jacobians and
// accumulate (+=) into grad_u, grad_v and the parameter gradients. Empty
// grad_u / grad_v spans skip the input gradient.
void backward_atm(ConstVec u, ConstVec v, const AtmView& p, ConstVec upstream, MutVec grad_u,
                  MutVec grad_v, const AtmGrad& grad);
void backward_attention(ConstVec u, ConstVec v, const AttentionView& p, ConstVec upstream,
                        MutVec grad_u, MutVec grad_v, const AttentionGrad& grad);
void backward_linear(ConstVec u, ConstVec v, const LinearView& p, ConstVec upstream, MutVec grad_u,
                     MutVec grad_v, const LinearGrad& grad);
void backward_mean(ConstVec upstream, MutVec grad_u, MutVec grad_v);

}  // namespace chronoret

#endif  // CHRONORET_FUSION_HPP_
