// Copyright 2026 The Panoground Authors. All Rights Reserved.
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

#ifndef PANOGROUND_PNG_IO_H_
#define PANOGROUND_PNG_IO_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace panoground {

// 8-bit RGB raster, row-major, three bytes per pixel.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> pixels;

  RgbImage() = default;
  RgbImage(int w, int h) : width(w), height(h), pixels(size_t(w) * h * 3, 0) {}

  uint8_t* at(int x, int y) { return &pixels[(size_t(y) * width + x) * 3]; }
  const uint8_t* at(int x, int y) const {
    return &pixels[(size_t(y) * width + x) * 3];
  }
};

// Decodes any PNG libpng understands into RGB8 (palette, gray and 16-bit
// inputs are expanded, alpha is dropped).
RgbImage ReadPng(const std::string& path);

void WritePng(const std::string& path, const RgbImage& image);

// Reads only the IHDR chunk. Returns {width, height}.
std::pair<int, int> ReadPngSize(const std::string& path);

}  // namespace panoground

#endif  // PANOGROUND_PNG_IO_H_
