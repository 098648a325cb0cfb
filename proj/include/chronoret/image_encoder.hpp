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

#ifndef CHRONORET_IMAGE_ENCODER_HPP_
#define CHRONORET_IMAGE_ENCODER_HPP_

#include <cstdint>
#include <string_view>

#include "chronoret/feature_vector.hpp"
#include "chronoret/image.hpp"

namespace chronoret {

// Global channel statistics through a seeded dense projection plus hashed
// color histograms of 4x4 and 8x8 block grids, L2-normalized.
FeatureVector encode_image_reference(std::string_view ppm_bytes, std::size_t dim, uint64_t seed);
FeatureVector encode_image(const Image& img, std::size_t dim, uint64_t seed);

}  // namespace chronoret

#endif  // CHRONORET_IMAGE_ENCODER_HPP_
