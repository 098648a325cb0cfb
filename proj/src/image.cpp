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

#include "chronoret/image.hpp"

#include <cctype>
#include <filesystem>

#include "chronoret/error.hpp"
#include "chronoret/fs_util.hpp"

namespace chronoret {

Image::Image(int width, int height, Rgb fill) : width_(width), height_(height) {
  if (width < 1 || height < 1) throw ConfigError("image dimensions must be >= 1");
  pixels_.resize(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3);
  for (std::size_t i = 0; i < pixels_.size(); i += 3) {
    pixels_[i] = fill.r;
    pixels_[i + 1] = fill.g;
    pixels_[i + 2] = fill.b;
  }
}

Rgb Image::at(int x, int y) const {
  const std::size_t i = (static_cast<std::size_t>(y) * width_ + x) * 3;
  return Rgb{pixels_[i], pixels_[i + 1], pixels_[i + 2]};
}

void Image::set(int x, int y, Rgb c) {
  const std::size_t i = (static_cast<std::size_t>(y) * width_ + x) * 3;
  pixels_[i] = c.r;
  pixels_[i + 1] = c.g;
  pixels_[i + 2] = c.b;
}

std::string encode_ppm(const Image& img) {
  std::string out = "P6\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  out.append(reinterpret_cast<const char*>(img.pixels().data()), img.pixels().size());
  return out;
}

namespace {

// Reads one whitespace-delimited header field, skipping '#' comments.
long read_header_int(std::string_view s, std::size_t& pos) {
  while (pos < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[pos]))) {
      ++pos;
    } else if (s[pos] == '#') {
      while (pos < s.size() && s[pos] != '\n') ++pos;
    } else {
      break;
    }
  }
  if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) {
    throw ParseError("malformed PPM header");
  }
  long v = 0;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
    v = v * 10 + (s[pos] - '0');
    if (v > 1 << 20) throw ParseError("PPM header value too large");
    ++pos;
  }
  return v;
}

}  // namespace

Image decode_ppm(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '6') throw ParseError("not a binary PPM (P6)");
  std::size_t pos = 2;
  const long w = read_header_int(bytes, pos);
  const long h = read_header_int(bytes, pos);
  const long maxval = read_header_int(bytes, pos);
  if (w < 1 || h < 1) throw ParseError("PPM dimensions must be positive");
  if (maxval != 255) throw ParseError("only 8-bit PPM (maxval 255) is supported");
  if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
    throw ParseError("malformed PPM header terminator");
  }
  ++pos;
  const std::size_t need = static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3;
  if (bytes.size() - pos < need) throw ParseError("truncated PPM payload");
  Image img(static_cast<int>(w), static_cast<int>(h));
  for (long y = 0; y < h; ++y) {
    for (long x = 0; x < w; ++x) {
      const std::size_t i = pos + (static_cast<std::size_t>(y) * w + x) * 3;
      img.set(static_cast<int>(x), static_cast<int>(y),
              Rgb{static_cast<uint8_t>(bytes[i]), static_cast<uint8_t>(bytes[i + 1]),
                  static_cast<uint8_t>(bytes[i + 2])});
    }
  }
  return img;
}

void write_ppm(const std::string& path, const Image& img) { write_file_atomic(path, encode_ppm(img)); }

void render_white_image(const std::string& path, int width, int height) {
  if (width < 1 || height < 1) throw ConfigError("white image dimensions must be >= 1");
  write_ppm(path, Image(width, height, Rgb{255, 255, 255}));
}

std::string DirectoryImageSource::bytes(std::string_view ref) const {
  return read_file((std::filesystem::path(root_) / std::string(ref)).string());
}

std::string MemoryImageSource::bytes(std::string_view ref) const {
  auto it = images_.find(std::string(ref));
  if (it == images_.end()) throw IntegrityError("unknown image '" + std::string(ref) + "'");
  return it->second;
}

}  // namespace chronoret
