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

#include "chronoret/fusion.hpp"

#include <cmath>
#include <string>

#include "chronoret/error.hpp"

namespace chronoret {
namespace {

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

void require(bool ok, const char* what) {
  if (!ok) throw ConfigError(std::string("fusion shape mismatch: ") + what);
}

void check_inputs(ConstVec u, ConstVec v, std::size_t out) {
  require(u.size() == v.size(), "text and vision dims differ");
  require(out == u.size(), "output dim");
}

void check_atm(ConstVec u, const AtmView& p) {
  const std::size_t d = u.size();
  const std::size_t g = atm_gate_rows(p.mode, d);
  require(p.dim == d, "ATM dim");
  require(p.gate_weight.size() == g * 2 * d, "ATM gate weight");
  require(p.gate_bias.size() == g, "ATM gate bias");
}

void check_linear(ConstVec u, const LinearView& p) {
  const std::size_t d = u.size();
  require(p.dim == d, "linear dim");
  require(p.text_map.size() == d * d && p.vision_map.size() == d * d, "linear maps");
  require(p.text_bias.size() == d && p.vision_bias.size() == d, "linear biases");
}

}  // namespace

std::string_view to_string(HeadKind h) {
  switch (h) {
    case HeadKind::kAtm: return "atm";
    case HeadKind::kAttention: return "attention";
    case HeadKind::kLinear: return "linear";
    case HeadKind::kMean: return "mean";
  }
  return "mean";
}

std::string_view to_string(AtmMode m) {
  return m == AtmMode::kScalarPerModality ? "scalar" : "per-dim";
}

HeadKind parse_head_kind(std::string_view s) {
  if (s == "atm") return HeadKind::kAtm;
  if (s == "attention") return HeadKind::kAttention;
  if (s == "linear") return HeadKind::kLinear;
  if (s == "mean") return HeadKind::kMean;
  throw ConfigError("unknown fusion head '" + std::string(s) + "'");
}

AtmMode parse_atm_mode(std::string_view s) {
  if (s == "scalar") return AtmMode::kScalarPerModality;
  if (s == "per-dim" || s == "perdim") return AtmMode::kPerDimComplementary;
  throw ConfigError("unknown ATM mode '" + std::string(s) + "'");
}

AtmParams AtmParams::zeros(AtmMode mode, std::size_t dim) {
  const std::size_t g = atm_gate_rows(mode, dim);
  return AtmParams{mode, dim, std::vector<double>(g * 2 * dim, 0.0), std::vector<double>(g, 0.0)};
}

LinearFusionParams LinearFusionParams::zeros(std::size_t dim) {
  return LinearFusionParams{dim, std::vector<double>(dim * dim, 0.0), std::vector<double>(dim, 0.0),
                            std::vector<double>(dim * dim, 0.0), std::vector<double>(dim, 0.0)};
}

std::vector<double> atm_gates(ConstVec u, ConstVec v, const AtmView& p) {
  check_atm(u, p);
  const std::size_t d = u.size();
  const std::size_t g = atm_gate_rows(p.mode, d);
  std::vector<double> gates(g);
  for (std::size_t r = 0; r < g; ++r) {
    const double* w = p.gate_weight.data() + r * 2 * d;
    double a = p.gate_bias[r];
    for (std::size_t i = 0; i < d; ++i) a += w[i] * u[i];
    for (std::size_t i = 0; i < d; ++i) a += w[d + i] * v[i];
    gates[r] = sigmoid(a);
  }
  return gates;
}

void fuse_atm(ConstVec u, ConstVec v, const AtmView& p, MutVec out) {
  check_inputs(u, v, out.size());
  const std::vector<double> g = atm_gates(u, v, p);
  const std::size_t d = u.size();
  if (p.mode == AtmMode::kScalarPerModality) {
    for (std::size_t i = 0; i < d; ++i) out[i] = g[0] * u[i] + g[1] * v[i];
  } else {
    for (std::size_t i = 0; i < d; ++i) out[i] = g[i] * u[i] + (1.0 - g[i]) * v[i];
  }
}

void backward_atm(ConstVec u, ConstVec v, const AtmView& p, ConstVec upstream, MutVec grad_u,
                  MutVec grad_v, const AtmGrad& grad) {
  check_inputs(u, v, upstream.size());
  const std::vector<double> g = atm_gates(u, v, p);
  const std::size_t d = u.size();
  const std::size_t rows = g.size();
  // d loss / d pre-activation of each gate.
  std::vector<double> da(rows);
  if (p.mode == AtmMode::kScalarPerModality) {
    double du = 0.0, dv = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      du += upstream[i] * u[i];
      dv += upstream[i] * v[i];
    }
    da[0] = du * g[0] * (1.0 - g[0]);
    da[1] = dv * g[1] * (1.0 - g[1]);
  } else {
    for (std::size_t i = 0; i < d; ++i) da[i] = upstream[i] * (u[i] - v[i]) * g[i] * (1.0 - g[i]);
  }
  for (std::size_t r = 0; r < rows; ++r) {
    double* gw = grad.gate_weight.data() + r * 2 * d;
    for (std::size_t i = 0; i < d; ++i) gw[i] += da[r] * u[i];
    for (std::size_t i = 0; i < d; ++i) gw[d + i] += da[r] * v[i];
    grad.gate_bias[r] += da[r];
  }
  if (grad_u.empty() && grad_v.empty()) return;
  for (std::size_t i = 0; i < d; ++i) {
    const double wu = p.mode == AtmMode::kScalarPerModality ? g[0] : g[i];
    const double wv = p.mode == AtmMode::kScalarPerModality ? g[1] : 1.0 - g[i];
    if (!grad_u.empty()) grad_u[i] += wu * upstream[i];
    if (!grad_v.empty()) grad_v[i] += wv * upstream[i];
  }
  for (std::size_t r = 0; r < rows; ++r) {
    const double* w = p.gate_weight.data() + r * 2 * d;
    for (std::size_t i = 0; i < d; ++i) {
      if (!grad_u.empty()) grad_u[i] += da[r] * w[i];
      if (!grad_v.empty()) grad_v[i] += da[r] * w[d + i];
    }
  }
}

std::pair<double, double> attention_weights(ConstVec u, ConstVec v, const AttentionView& p) {
  require(p.query.size() == u.size() && u.size() == v.size(), "attention query dim");
  const double scale = 1.0 / std::sqrt(static_cast<double>(u.size()));
  double s1 = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    s1 += p.query[i] * u[i];
    s2 += p.query[i] * v[i];
  }
  s1 *= scale;
  s2 *= scale;
  const double m = std::max(s1, s2);
  const double e1 = std::exp(s1 - m);
  const double e2 = std::exp(s2 - m);
  return {e1 / (e1 + e2), e2 / (e1 + e2)};
}

void fuse_attention(ConstVec u, ConstVec v, const AttentionView& p, MutVec out) {
  check_inputs(u, v, out.size());
  const auto [a1, a2] = attention_weights(u, v, p);
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = a1 * u[i] + a2 * v[i];
}

void backward_attention(ConstVec u, ConstVec v, const AttentionView& p, ConstVec upstream,
                        MutVec grad_u, MutVec grad_v, const AttentionGrad& grad) {
  check_inputs(u, v, upstream.size());
  const auto [a1, a2] = attention_weights(u, v, p);
  const std::size_t d = u.size();
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  double g1 = 0.0, g2 = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    g1 += upstream[i] * u[i];
    g2 += upstream[i] * v[i];
  }
  // Softmax Jacobian.
  const double mean = a1 * g1 + a2 * g2;
  const double ds1 = a1 * (g1 - mean);
  const double ds2 = a2 * (g2 - mean);
  for (std::size_t i = 0; i < d; ++i) grad.query[i] += scale * (ds1 * u[i] + ds2 * v[i]);
  for (std::size_t i = 0; i < d; ++i) {
    if (!grad_u.empty()) grad_u[i] += a1 * upstream[i] + ds1 * scale * p.query[i];
    if (!grad_v.empty()) grad_v[i] += a2 * upstream[i] + ds2 * scale * p.query[i];
  }
}

void fuse_linear(ConstVec u, ConstVec v, const LinearView& p, MutVec out) {
  check_inputs(u, v, out.size());
  check_linear(u, p);
  const std::size_t d = u.size();
  for (std::size_t r = 0; r < d; ++r) {
    const double* a = p.text_map.data() + r * d;
    const double* b = p.vision_map.data() + r * d;
    double s = p.text_bias[r] + p.vision_bias[r];
    for (std::size_t i = 0; i < d; ++i) s += a[i] * u[i] + b[i] * v[i];
    out[r] = s;
  }
}

void backward_linear(ConstVec u, ConstVec v, const LinearView& p, ConstVec upstream, MutVec grad_u,
                     MutVec grad_v, const LinearGrad& grad) {
  check_inputs(u, v, upstream.size());
  check_linear(u, p);
  const std::size_t d = u.size();
  for (std::size_t r = 0; r < d; ++r) {
    const double g = upstream[r];
    double* ga = grad.text_map.data() + r * d;
    double* gb = grad.vision_map.data() + r * d;
    for (std::size_t i = 0; i < d; ++i) {
      ga[i] += g * u[i];
      gb[i] += g * v[i];
    }
    grad.text_bias[r] += g;
    grad.vision_bias[r] += g;
    if (grad_u.empty() && grad_v.empty()) continue;
    const double* a = p.text_map.data() + r * d;
    const double* b = p.vision_map.data() + r * d;
    for (std::size_t i = 0; i < d; ++i) {
      if (!grad_u.empty()) grad_u[i] += a[i] * g;
      if (!grad_v.empty()) grad_v[i] += b[i] * g;
    }
  }
}

void fuse_mean(ConstVec u, ConstVec v, MutVec out) {
  check_inputs(u, v, out.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = 0.5 * (u[i] + v[i]);
}

void backward_mean(ConstVec upstream, MutVec grad_u, MutVec grad_v) {
  for (std::size_t i = 0; i < upstream.size(); ++i) {
    if (!grad_u.empty()) grad_u[i] += 0.5 * upstream[i];
    if (!grad_v.empty()) grad_v[i] += 0.5 * upstream[i];
  }
}

}  // namespace chronoret
