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

#include "chronoret/image_encoder.hpp"

#include <array>
#include <cmath>
#include <string>

#include "chronoret/error.hpp"
#include "chronoret/hash.hpp"
#include "chronoret/text_encoder.hpp"

namespace chronoret {
namespace {

constexpr double kDenseWeight = 0.2;
constexpr double kHistogramWeight = 1.0;
constexpr int kLevels = 6;

// Deterministic standard normal from a 64-bit key (Box-Muller).
double hashed_normal(uint64_t key) {
  const uint64_t a = splitmix64(key);
  const uint64_t b = splitmix64(a);
  double u1 = static_cast<double>(a >> 11) * 0x1.0p-53;
  const double u2 = static_cast<double>(b >> 11) * 0x1.0p-53;
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

int quantize(double c) {
  const int q = static_cast<int>(std::lround(c / 255.0 * (kLevels - 1)));
  return q < 0 ? 0 : (q >= kLevels ? kLevels - 1 : q);
}

}  // namespace

FeatureVector encode_image(const Image& img, std::size_t dim, uint64_t seed) {
  if (dim < kMinEncoderDim) throw ConfigError("image encoder dim must be >= " + std::to_string(kMinEncoderDim));
  const int w = img.width();
  const int h = img.height();
  const double n = static_cast<double>(w) * h;

  // (a) per-channel mean and standard deviation on [0, 1].
  std::array<double, 3> sum{}, sq{};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const Rgb c = img.at(x, y);
      const std::array<double, 3> v = {c.r / 255.0, c.g / 255.0, c.b / 255.0};
      for (int k = 0; k < 3; ++k) {
        sum[k] += v[k];
        sq[k] += v[k] * v[k];
      }
    }
  }
  std::array<double, 6> stats{};
  for (int k = 0; k < 3; ++k) {
    const double mean = sum[k] / n;
    stats[k] = mean - 0.5;
    stats[3 + k] = std::sqrt(std::max(0.0, sq[k] / n - mean * mean));
  }
  FeatureVector dense(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < stats.size(); ++j) {
      acc += hashed_normal(hash_combine(seed, i * 16 + j)) * stats[j];
    }
    dense[i] = acc;
  }
  dense.normalize();

  // (b) hashed histograms of quantized block mean colors.
  FeatureVector hist(dim);
  for (int grid : {4, 8}) {
    const double weight = 1.0 / (grid * grid);
    for (int by = 0; by < grid; ++by) {
      for (int bx = 0; bx < grid; ++bx) {
        const int x0 = bx * w / grid, x1 = std::max(x0 + 1, (bx + 1) * w / grid);
        const int y0 = by * h / grid, y1 = std::max(y0 + 1, (by + 1) * h / grid);
        std::array<double, 3> acc{};
        int count = 0;
        for (int y = y0; y < y1 && y < h; ++y) {
          for (int x = x0; x < x1 && x < w; ++x) {
            const Rgb c = img.at(x, y);
            acc[0] += c.r;
            acc[1] += c.g;
            acc[2] += c.b;
            ++count;
          }
        }
        const int bin = (quantize(acc[0] / count) * kLevels + quantize(acc[1] / count)) * kLevels +
                        quantize(acc[2] / count);
        const std::string key = "g" + std::to_string(grid) + ":" + std::to_string(bin);
        const uint64_t hk = seeded_hash(seed, key);
        const double sign = (splitmix64(hk) >> 63) != 0 ? -1.0 : 1.0;
        hist[static_cast<std::size_t>(hk % dim)] += sign * weight;
      }
    }
  }
  hist.normalize();

  FeatureVector out(dim);
  for (std::size_t i = 0; i < dim; ++i) out[i] = kDenseWeight * dense[i] + kHistogramWeight * hist[i];
  out.normalize();
  return out;
}

FeatureVector encode_image_reference(std::string_view ppm_bytes, std::size_t dim, uint64_t seed) {
  return encode_image(decode_ppm(ppm_bytes), dim, seed);
}

}  // namespace chronoret
