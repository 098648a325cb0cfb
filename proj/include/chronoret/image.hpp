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

#ifndef CHRONORET_IMAGE_HPP_
#define CHRONORET_IMAGE_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace chronoret {

struct Rgb {
  uint8_t r = 0;
  uint8_t g = 0;
  uint8_t b = 0;
};

// Packed 8-bit RGB raster.
class Image {
 public:
  Image() = default;
  Image(int width, int height, Rgb fill = {255, 255, 255});

  int width() const { return width_; }
  int height() const { return height_; }
  Rgb at(int x, int y) const;
  void set(int x, int y, Rgb c);
  const std::vector<uint8_t>& pixels() const { return pixels_; }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<uint8_t> pixels_;
};

std::string encode_ppm(const Image& img);
// Binary P6 with maxval 255; throws ParseError on anything else.
Image decode_ppm(std::string_view bytes);

void write_ppm(const std::string& path, const Image& img);
void render_white_image(const std::string& path, int width, int height);

// Resolves an image_ref to encoded PPM bytes.
class ImageSource {
 public:
  virtual ~ImageSource() = default;
  virtual std::string bytes(std::string_view ref) const = 0;
};

class DirectoryImageSource : public ImageSource {
 public:
  explicit DirectoryImageSource(std::string root) : root_(std::move(root)) {}
  std::string bytes(std::string_view ref) const override;

 private:
  std::string root_;
};

class MemoryImageSource : public ImageSource {
 public:
  void add(std::string ref, std::string ppm) { images_[std::move(ref)] = std::move(ppm); }
  std::string bytes(std::string_view ref) const override;
  const std::map<std::string, std::string>& images() const { return images_; }

 private:
  std::map<std::string, std::string> images_;
};

}  // namespace chronoret

#endif  // CHRONORET_IMAGE_HPP_
