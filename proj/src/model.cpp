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

#include "chronoret/model.hpp"

#include <algorithm>
#include <cmath>

#include "chronoret/error.hpp"
#include "chronoret/hash.hpp"
#include "chronoret/rng.hpp"

namespace chronoret {

std::string_view to_string(Similarity s) { return s == Similarity::kDot ? "dot" : "cosine"; }

Similarity parse_similarity(std::string_view s) {
  if (s == "dot") return Similarity::kDot;
  if (s == "cosine") return Similarity::kCosine;
  throw ConfigError("unknown similarity '" + std::string(s) + "'");
}

void ModelConfig::check() const {
  if (!(temperature > 0.0)) throw ConfigError("temperature must be > 0");
  if (dim < 1) throw ConfigError("model dim must be >= 1");
  if (!projections && (text_in != dim || vision_in != dim)) {
    throw ConfigError("input dims " + std::to_string(text_in) + "/" + std::to_string(vision_in) +
                      " differ from model dim " + std::to_string(dim) + "; enable projections");
  }
}

std::string ModelConfig::fingerprint() const {
  const std::string s = "head=" + std::string(to_string(head)) + ";mode=" + std::string(to_string(atm_mode)) +
                        ";sim=" + std::string(to_string(similarity)) + ";tau=" + std::to_string(temperature) +
                        ";proj=" + (projections ? "1" : "0") + ";dim=" + std::to_string(dim) +
                        ";in=" + std::to_string(text_in) + "x" + std::to_string(vision_in);
  return hex64(seeded_hash(0x30de1, s));
}

void Model::build_layout() {
  std::size_t off = 0;
  auto add = [&](std::string name, std::size_t rows, std::size_t cols) {
    layout_.push_back(ParamBlock{std::move(name), off, rows, cols});
    off += rows * cols;
  };
  const std::size_t d = cfg_.dim;
  if (cfg_.projections) {
    add("proj_text.weight", d, cfg_.text_in);
    add("proj_text.bias", d, 1);
    add("proj_vision.weight", d, cfg_.vision_in);
    add("proj_vision.bias", d, 1);
  }
  switch (cfg_.head) {
    case HeadKind::kAtm:
      add("atm.gate_weight", atm_gate_rows(cfg_.atm_mode, d), 2 * d);
      add("atm.gate_bias", atm_gate_rows(cfg_.atm_mode, d), 1);
      break;
    case HeadKind::kAttention:
      add("attention.query", d, 1);
      break;
    case HeadKind::kLinear:
      add("linear.text_map", d, d);
      add("linear.text_bias", d, 1);
      add("linear.vision_map", d, d);
      add("linear.vision_bias", d, 1);
      break;
    case HeadKind::kMean:
      break;
  }
  params_.assign(off, 0.0);
}

Model::Model(const ModelConfig& cfg, uint64_t init_seed) : cfg_(cfg) {
  cfg_.check();
  build_layout();
  Rng rng(hash_combine(init_seed, 0x1417));
  const std::size_t d = cfg_.dim;
  for (const auto& b : layout_) {
    double* p = params_.data() + b.offset;
    if (b.name == "proj_text.weight" || b.name == "proj_vision.weight") {
      if (b.rows == b.cols) {
        for (std::size_t i = 0; i < b.rows; ++i) p[i * b.cols + i] = 1.0;
      } else {
        const double bound = 1.0 / std::sqrt(static_cast<double>(b.cols));
        for (std::size_t i = 0; i < b.size(); ++i) p[i] = rng.uniform(-bound, bound);
      }
      continue;
    }
    if (b.name == "proj_text.bias" || b.name == "proj_vision.bias") continue;
    // fan_in: 2D for the gate, D for the attention query and linear maps.
    const double fan_in = b.name.rfind("atm.", 0) == 0 ? 2.0 * d : static_cast<double>(d);
    const double bound = 1.0 / std::sqrt(fan_in);
    for (std::size_t i = 0; i < b.size(); ++i) p[i] = rng.uniform(-bound, bound);
  }
}

Model::Model(const ModelConfig& cfg, std::vector<double> params) : cfg_(cfg) {
  cfg_.check();
  build_layout();
  if (params.size() != params_.size()) {
    throw ConfigError("checkpoint has " + std::to_string(params.size()) + " parameters, expected " +
                      std::to_string(params_.size()));
  }
  params_ = std::move(params);
}

const ParamBlock* Model::block(std::string_view name) const {
  for (const auto& b : layout_) {
    if (b.name == name) return &b;
  }
  return nullptr;
}

ConstVec Model::seg(std::string_view name) const {
  const ParamBlock* b = block(name);
  return {params_.data() + b->offset, b->size()};
}

MutVec Model::seg(MutVec buf, std::string_view name) const {
  const ParamBlock* b = block(name);
  return buf.subspan(b->offset, b->size());
}

AtmView Model::atm_view() const {
  return AtmView{cfg_.atm_mode, cfg_.dim, seg("atm.gate_weight"), seg("atm.gate_bias")};
}

LinearView Model::linear_view() const {
  return LinearView{cfg_.dim, seg("linear.text_map"), seg("linear.text_bias"), seg("linear.vision_map"),
                    seg("linear.vision_bias")};
}

namespace {

void affine(ConstVec w, ConstVec b, ConstVec x, MutVec out) {
  const std::size_t in = x.size();
  for (std::size_t r = 0; r < out.size(); ++r) {
    const double* row = w.data() + r * in;
    double s = b[r];
    for (std::size_t i = 0; i < in; ++i) s += row[i] * x[i];
    out[r] = s;
  }
}

void affine_backward(ConstVec x, ConstVec upstream, MutVec gw, MutVec gb) {
  const std::size_t in = x.size();
  for (std::size_t r = 0; r < upstream.size(); ++r) {
    const double g = upstream[r];
    if (g == 0.0) continue;
    double* row = gw.data() + r * in;
    for (std::size_t i = 0; i < in; ++i) row[i] += g * x[i];
    gb[r] += g;
  }
}

}  // namespace

void Model::represent(ConstVec text, ConstVec vision, MutVec out, Scratch& s) const {
  const std::size_t d = cfg_.dim;
  ConstVec u = text;
  ConstVec v = vision;
  if (cfg_.projections) {
    s.u.resize(d);
    affine(seg("proj_text.weight"), seg("proj_text.bias"), text, s.u);
    u = s.u;
    if (!vision.empty()) {
      s.v.resize(d);
      affine(seg("proj_vision.weight"), seg("proj_vision.bias"), vision, s.v);
      v = s.v;
    }
  }
  if (u.size() != d || out.size() != d) throw ConfigError("represent: dimension mismatch");
  if (vision.empty()) {
    std::copy(u.begin(), u.end(), out.begin());
    return;
  }
  switch (cfg_.head) {
    case HeadKind::kAtm: fuse_atm(u, v, atm_view(), out); break;
    case HeadKind::kAttention: fuse_attention(u, v, AttentionView{seg("attention.query")}, out); break;
    case HeadKind::kLinear: fuse_linear(u, v, linear_view(), out); break;
    case HeadKind::kMean: fuse_mean(u, v, out); break;
  }
}

void Model::represent_backward(ConstVec text, ConstVec vision, ConstVec upstream, MutVec grad,
                               Scratch& s) const {
  const std::size_t d = cfg_.dim;
  ConstVec u = text;
  ConstVec v = vision;
  if (cfg_.projections) {
    s.u.resize(d);
    affine(seg("proj_text.weight"), seg("proj_text.bias"), text, s.u);
    u = s.u;
    if (!vision.empty()) {
      s.v.resize(d);
      affine(seg("proj_vision.weight"), seg("proj_vision.bias"), vision, s.v);
      v = s.v;
    }
  }
  // Input gradients are only needed to reach the projections.
  MutVec gu, gv;
  if (cfg_.projections) {
    s.gu.assign(d, 0.0);
    gu = s.gu;
    if (!vision.empty()) {
      s.gv.assign(d, 0.0);
      gv = s.gv;
    }
  }
  if (vision.empty()) {
    if (cfg_.projections) std::copy(upstream.begin(), upstream.end(), s.gu.begin());
  } else {
    switch (cfg_.head) {
      case HeadKind::kAtm:
        backward_atm(u, v, atm_view(), upstream, gu, gv,
                     AtmGrad{seg(grad, "atm.gate_weight"), seg(grad, "atm.gate_bias")});
        break;
      case HeadKind::kAttention:
        backward_attention(u, v, AttentionView{seg("attention.query")}, upstream, gu, gv,
                           AttentionGrad{seg(grad, "attention.query")});
        break;
      case HeadKind::kLinear:
        backward_linear(u, v, linear_view(), upstream, gu, gv,
                        LinearGrad{seg(grad, "linear.text_map"), seg(grad, "linear.text_bias"),
                                   seg(grad, "linear.vision_map"), seg(grad, "linear.vision_bias")});
        break;
      case HeadKind::kMean:
        backward_mean(upstream, gu, gv);
        break;
    }
  }
  if (cfg_.projections) {
    affine_backward(text, s.gu, seg(grad, "proj_text.weight"), seg(grad, "proj_text.bias"));
    if (!vision.empty()) {
      affine_backward(vision, s.gv, seg(grad, "proj_vision.weight"), seg(grad, "proj_vision.bias"));
    }
  }
}

double score(ConstVec q, ConstVec c, Similarity sim, double temperature) {
  if (q.size() != c.size()) throw ConfigError("score: dimension mismatch");
  const double qc = dot(q, c);
  if (sim == Similarity::kDot) return qc / temperature;
  const double nq = norm(q);
  const double nc = norm(c);
  if (nq == 0.0 || nc == 0.0) return 0.0;
  return qc / (nq * nc * temperature);
}

void score_backward(ConstVec q, ConstVec c, Similarity sim, double temperature, double upstream,
                    MutVec grad_q, MutVec grad_c) {
  const std::size_t d = q.size();
  if (sim == Similarity::kDot) {
    const double k = upstream / temperature;
    for (std::size_t i = 0; i < d; ++i) {
      if (!grad_q.empty()) grad_q[i] += k * c[i];
      if (!grad_c.empty()) grad_c[i] += k * q[i];
    }
    return;
  }
  const double nq = norm(q);
  const double nc = norm(c);
  if (nq == 0.0 || nc == 0.0) return;
  const double s = dot(q, c) / (nq * nc * temperature);
  const double k = upstream / (nq * nc * temperature);
  for (std::size_t i = 0; i < d; ++i) {
    if (!grad_q.empty()) grad_q[i] += k * c[i] - upstream * s * q[i] / (nq * nq);
    if (!grad_c.empty()) grad_c[i] += k * q[i] - upstream * s * c[i] / (nc * nc);
  }
}

double retrieval_loss(std::span<const double> scores, std::size_t label) {
  if (label >= scores.size()) throw ConfigError("label index out of range");
  const double m = *std::max_element(scores.begin(), scores.end());
  double z = 0.0;
  for (double s : scores) z += std::exp(s - m);
  return std::log(z) + m - scores[label];
}

std::vector<double> retrieval_loss_grad(std::span<const double> scores, std::size_t label) {
  if (label >= scores.size()) throw ConfigError("label index out of range");
  const double m = *std::max_element(scores.begin(), scores.end());
  std::vector<double> g(scores.size());
  double z = 0.0;
  for (std::size_t j = 0; j < scores.size(); ++j) {
    g[j] = std::exp(scores[j] - m);
    z += g[j];
  }
  for (double& x : g) x /= z;
  g[label] -= 1.0;
  return g;
}

namespace {

ConstVec vision_of(const PreparedSet& set, uint32_t row) {
  return row == kNoRow ? ConstVec{} : set.bank.vision_row(row);
}

// Fills s.query and s.cands with the fused representations.
void forward_all(const Model& m, const PreparedSet& set, const PreparedInstance& inst, Scratch& s) {
  const std::size_t d = m.config().dim;
  s.query.resize(d);
  m.represent(set.bank.text_row(inst.query_text), set.bank.vision_row(inst.query_vision), s.query, s);
  s.cands.resize(inst.n_candidates());
  for (std::size_t j = 0; j < inst.n_candidates(); ++j) {
    s.cands[j].resize(d);
    m.represent(set.bank.text_row(inst.cand_text[j]), vision_of(set, inst.cand_vision[j]), s.cands[j], s);
  }
}

}  // namespace

FeatureVector represent_query(const Model& m, const PreparedSet& set, const PreparedInstance& inst) {
  Scratch s;
  FeatureVector out(m.config().dim);
  m.represent(set.bank.text_row(inst.query_text), set.bank.vision_row(inst.query_vision), out.span(), s);
  return out;
}

FeatureVector represent_candidate(const Model& m, const PreparedSet& set, const PreparedInstance& inst,
                                  std::size_t j) {
  Scratch s;
  FeatureVector out(m.config().dim);
  m.represent(set.bank.text_row(inst.cand_text[j]), vision_of(set, inst.cand_vision[j]), out.span(), s);
  return out;
}

std::vector<double> instance_scores(const Model& m, const PreparedSet& set, const PreparedInstance& inst,
                                    Scratch& s) {
  forward_all(m, set, inst, s);
  std::vector<double> scores(inst.n_candidates());
  for (std::size_t j = 0; j < scores.size(); ++j) {
    scores[j] = score(s.query, s.cands[j], m.config().similarity, m.config().temperature);
  }
  return scores;
}

double instance_loss(const Model& m, const PreparedSet& set, const PreparedInstance& inst, Scratch& s) {
  const std::vector<double> scores = instance_scores(m, set, inst, s);
  return retrieval_loss(scores, inst.label);
}

double instance_loss_and_grad(const Model& m, const PreparedSet& set, const PreparedInstance& inst,
                              MutVec grad, Scratch& s) {
  const std::vector<double> scores = instance_scores(m, set, inst, s);
  const double loss = retrieval_loss(scores, inst.label);
  if (m.n_params() == 0) return loss;
  const std::vector<double> ds = retrieval_loss_grad(scores, inst.label);
  const std::size_t d = m.config().dim;
  const auto sim = m.config().similarity;
  const double tau = m.config().temperature;
  s.grad_query.assign(d, 0.0);
  s.grad_fused.resize(d);
  for (std::size_t j = 0; j < inst.n_candidates(); ++j) {
    std::fill(s.grad_fused.begin(), s.grad_fused.end(), 0.0);
    score_backward(s.query, s.cands[j], sim, tau, ds[j], s.grad_query, s.grad_fused);
    m.represent_backward(set.bank.text_row(inst.cand_text[j]), vision_of(set, inst.cand_vision[j]),
                         s.grad_fused, grad, s);
  }
  m.represent_backward(set.bank.text_row(inst.query_text), set.bank.vision_row(inst.query_vision),
                       s.grad_query, grad, s);
  return loss;
}

}  // namespace chronoret
