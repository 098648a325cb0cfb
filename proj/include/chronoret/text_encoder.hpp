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

#ifndef CHRONORET_TEXT_ENCODER_HPP_
#define CHRONORET_TEXT_ENCODER_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "chronoret/feature_vector.hpp"

namespace chronoret {

// Lowercases and splits on whitespace and punctuation. Dates "yyyy/mm/dd",
// "rel:*" and "token|rel:*" survive as single tokens; bracketed markup such
// as the "[SEP]" delimiter is dropped.
std::vector<std::string> tokenize(std::string_view s);

inline constexpr std::size_t kMinEncoderDim = 8;

// Signed feature hashing of the token bag, L2-normalized.
FeatureVector encode_text_reference(std::string_view s, std::size_t dim, uint64_t seed);

}  // namespace chronoret

#endif  // CHRONORET_TEXT_ENCODER_HPP_
