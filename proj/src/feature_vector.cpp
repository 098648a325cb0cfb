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

#include "chronoret/feature_vector.hpp"

#include "chronoret/error.hpp"

namespace chronoret {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double cosine(std::span<const double> a, std::span<const double> b) {
  const double na = norm(a);
  const double nb = norm(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot(a, b) / (na * nb);
}

bool FeatureVector::is_zero() const {
  for (double v : values_) {
    if (v != 0.0) return false;
  }
  return true;
}

bool FeatureVector::all_finite() const {
  for (double v : values_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void FeatureVector::normalize() {
  const double n = norm();
  if (n == 0.0) return;
  for (double& v : values_) v /= n;
}

FeatureVector mean_pool(const std::vector<FeatureVector>& vs) {
  if (vs.empty()) throw ConfigError("mean_pool of an empty list");
  FeatureVector out(vs.front().dim());
  for (const auto& v : vs) {
    if (v.dim() != out.dim()) throw ConfigError("mean_pool over mixed dimensions");
    for (std::size_t i = 0; i < v.dim(); ++i) out[i] += v[i];
  }
  const double n = static_cast<double>(vs.size());
  for (std::size_t i = 0; i < out.dim(); ++i) out[i] /= n;
  return out;
}

}  // namespace chronoret
