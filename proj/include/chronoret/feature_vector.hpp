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

#ifndef CHRONORET_FEATURE_VECTOR_HPP_
#define CHRONORET_FEATURE_VECTOR_HPP_

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace chronoret {

class FeatureVector {
 public:
  FeatureVector() = default;
  explicit FeatureVector(std::size_t dim) : values_(dim, 0.0) {}
  explicit FeatureVector(std::vector<double> values) : values_(std::move(values)) {}

  std::size_t dim() const { return values_.size(); }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> span() const { return values_; }
  std::span<double> span() { return values_; }
  const std::vector<double>& values() const { return values_; }

  double norm() const;
  bool is_zero() const;
  bool all_finite() const;
  // Scales to unit length; the zero vector is left unchanged.
  void normalize();

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;

 private:
  std::vector<double> values_;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);
double cosine(std::span<const double> a, std::span<const double> b);

// Elementwise mean without renormalization.
FeatureVector mean_pool(const std::vector<FeatureVector>& vs);

inline double FeatureVector::norm() const { return chronoret::norm(values_); }

}  // namespace chronoret

#endif  // CHRONORET_FEATURE_VECTOR_HPP_
