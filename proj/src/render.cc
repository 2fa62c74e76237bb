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

#include "panoground/render.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "panoground/errors.h"

namespace panoground {

namespace {

constexpr std::array<uint8_t, 3> kPalette[] = {
    {230, 25, 75},  {60, 180, 75},   {255, 225, 25}, {0, 130, 200},
    {245, 130, 48}, {145, 30, 180},  {70, 240, 240}, {240, 50, 230},
    {210, 245, 60}, {250, 190, 212}, {0, 128, 128},  {170, 110, 40},
};

void Put(RgbImage& img, int x, int y, std::array<uint8_t, 3> c) {
  if (x < 0 || y < 0 || x >= img.width || y >= img.height) return;
  uint8_t* p = img.at(x, y);
  p[0] = c[0];
  p[1] = c[1];
  p[2] = c[2];
}

void Line(RgbImage& img, int x0, int y0, int x1, int y1,
          std::array<uint8_t, 3> c) {
  const int dx = std::abs(x1 - x0), sx = x0 < x1 ? 1 : -1;
  const int dy = -std::abs(y1 - y0), sy = y0 < y1 ? 1 : -1;
  int err = dx + dy;
  while (true) {
    Put(img, x0, y0, c);
    if (x0 == x1 && y0 == y1) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x0 += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y0 += sy;
    }
  }
}

int ToPixel(double v, int extent) {
  return std::clamp(static_cast<int>(std::floor(v * extent)), 0, extent - 1);
}

}  // namespace

std::array<uint8_t, 3> PhraseTint(size_t index) {
  return kPalette[index % std::size(kPalette)];
}

RgbImage RenderOverlay(const Narrative& narrative,
                       const GroundedNarrative* grounded,
                       const PanopticImage& image, const RgbImage* base) {
  RgbImage out;
  if (base != nullptr) {
    if (base->width != image.width() || base->height != image.height()) {
      throw InvalidArgumentError("base image size differs from the panoptic raster");
    }
    out = *base;
  } else {
    out = RgbImage(image.width(), image.height());
    for (int y = 0; y < image.height(); ++y) {
      for (int x = 0; x < image.width(); ++x) {
        const SegmentId id = image.id_at(x, y);
        const uint8_t g =
            id == kVoidSegment ? 40 : static_cast<uint8_t>(90 + (id * 37) % 80);
        Put(out, x, y, {g, g, g});
      }
    }
  }

  if (grounded != nullptr) {
    for (size_t i = 0; i < grounded->phrases.size(); ++i) {
      const auto tint = PhraseTint(i);
      const auto& ids = grounded->phrases[i].segment_ids;
      for (int y = 0; y < image.height(); ++y) {
        for (int x = 0; x < image.width(); ++x) {
          const SegmentId id = image.id_at(x, y);
          if (id != kVoidSegment &&
              std::find(ids.begin(), ids.end(), id) != ids.end()) {
            Put(out, x, y, tint);
          }
        }
      }
    }
  }

  constexpr std::array<uint8_t, 3> kTrace = {255, 255, 255};
  for (const auto& stroke : narrative.traces) {
    for (size_t k = 0; k < stroke.size(); ++k) {
      const int x = ToPixel(stroke[k].x, image.width());
      const int y = ToPixel(stroke[k].y, image.height());
      if (k == 0) {
        Put(out, x, y, kTrace);
      } else {
        Line(out, ToPixel(stroke[k - 1].x, image.width()),
             ToPixel(stroke[k - 1].y, image.height()), x, y, kTrace);
      }
    }
  }

  if (grounded != nullptr) {
    constexpr std::array<uint8_t, 3> kMarker = {0, 0, 0};
    for (const GroundedPhrase& g : grounded->phrases) {
      for (int d = -2; d <= 2; ++d) {
        Put(out, g.com.x + d, g.com.y, kMarker);
        Put(out, g.com.x, g.com.y + d, kMarker);
      }
    }
  }
  return out;
}

}  // namespace panoground
