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

// COCO-panoptic style annotations: category index, per-image segment records
// and the PNG segment-id raster (id = r + 256 g + 65536 b).

#ifndef PANOGROUND_PANOPTIC_STORE_H_
#define PANOGROUND_PANOPTIC_STORE_H_

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "panoground/mask.h"
#include "panoground/png_io.h"

namespace panoground {

using SegmentId = uint32_t;
inline constexpr SegmentId kVoidSegment = 0;

struct CategoryRecord {
  int id = 0;
  std::string name;  // lowercase
  bool is_thing = false;
};

using CategoryIndex = std::map<int, CategoryRecord>;

// Accepts a JSON array of {id, name, isthing} or an object carrying such an
// array under "categories" (the layout of COCO panoptic json files).
CategoryIndex ParseCategoryIndex(std::string_view json_text,
                                 const std::string& source = "<memory>");
CategoryIndex LoadCategoryIndex(const std::string& path);

struct BoundingBox {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;
};

struct SegmentRecord {
  SegmentId id = 0;
  int category_id = 0;
  int64_t area = 0;
  BoundingBox bbox;
};

// One entry of segments_info-style annotation json.
struct PanopticAnnotation {
  int64_t image_id = 0;
  std::string file_name;
  std::vector<SegmentRecord> segments;
  // Zero when the annotation file does not carry image sizes.
  int width = 0;
  int height = 0;
};

constexpr SegmentId DecodeSegmentId(uint8_t r, uint8_t g, uint8_t b) {
  return SegmentId(r) + 256u * SegmentId(g) + 65536u * SegmentId(b);
}

constexpr std::array<uint8_t, 3> EncodeSegmentId(SegmentId id) {
  return {uint8_t(id & 0xff), uint8_t((id >> 8) & 0xff),
          uint8_t((id >> 16) & 0xff)};
}

struct PixelPoint {
  int x = 0;
  int y = 0;
  friend bool operator==(const PixelPoint&, const PixelPoint&) = default;
};

// Inclusive pixel rectangle.
struct PixelBox {
  int x0 = 0;
  int y0 = 0;
  int x1 = -1;
  int y1 = -1;

  bool Contains(const PixelBox& o) const {
    return o.x0 >= x0 && o.x1 <= x1 && o.y0 >= y0 && o.y1 <= y1;
  }
};

// Immutable after construction; safe to share between threads.
class PanopticImage {
 public:
  // Validates the raster against the records: every nonzero raster id has a
  // record, every record appears in the raster, recounted areas equal the
  // declared ones and boxes lie inside the image. Throws IntegrityError.
  static PanopticImage FromIds(const PanopticAnnotation& annotation, int width,
                               int height, std::vector<SegmentId> ids);

  // Segment records synthesized from the raster itself (category 0, exact
  // areas and boxes). Used for proposal rasters.
  static PanopticImage FromUnannotatedIds(int64_t image_id, int width,
                                          int height,
                                          std::vector<SegmentId> ids);

  int64_t image_id() const { return image_id_; }
  const std::string& file_name() const { return file_name_; }
  int width() const { return width_; }
  int height() const { return height_; }
  std::span<const SegmentId> ids() const { return ids_; }
  SegmentId id_at(int x, int y) const { return ids_[size_t(y) * width_ + x]; }
  SegmentId id_at(PixelPoint p) const { return id_at(p.x, p.y); }

  // Sorted by id.
  const std::vector<SegmentRecord>& segments() const { return segments_; }
  const SegmentRecord* FindSegment(SegmentId id) const;
  // Throws NotFoundError.
  const SegmentRecord& segment(SegmentId id) const;
  // Tight extent of the segment's pixels.
  const PixelBox& extent(SegmentId id) const;

  int64_t annotated_pixels() const { return annotated_pixels_; }

 private:
  PanopticImage() = default;
  void Index();
  size_t IndexOf(SegmentId id) const;

  int64_t image_id_ = 0;
  std::string file_name_;
  int width_ = 0;
  int height_ = 0;
  std::vector<SegmentId> ids_;
  std::vector<SegmentRecord> segments_;
  std::vector<PixelBox> extents_;
  std::vector<int64_t> pixel_counts_;
  std::unordered_map<SegmentId, size_t> position_;
  int64_t annotated_pixels_ = 0;
};

// Decodes the RGB raster and validates it against the annotation. Throws
// IntegrityError for dimension mismatches or record/raster disagreement.
PanopticImage LoadPanopticImage(const PanopticAnnotation& annotation,
                                const RgbImage& raster);

std::vector<SegmentId> DecodeRaster(const RgbImage& raster);

// Bit set iff the raster value is one of `ids`. Throws NotFoundError for
// unknown ids and InvalidArgumentError for an empty id set.
BinaryMask MaskOf(const PanopticImage& image, std::span<const SegmentId> ids);

// Exact squared Euclidean distance from every pixel center to the nearest
// seed pixel, row-major. Pixels are unreachable (INT64_MAX) only when there
// are no seeds. Separable two-pass lower-envelope algorithm, O(W*H).
std::vector<int64_t> SquaredDistanceTransform(int width, int height,
                                              std::span<const uint8_t> seeds);

// Single-linkage distance between two segments: the minimum distance between
// their pixel centers. Void pixels are free space.
double RegionMinDistance(const PanopticImage& image, SegmentId a, SegmentId b);

// Distance from pixel `p` to the nearest pixel of `b`; 0 when p lies in b.
double PointMinDistance(const PanopticImage& image, PixelPoint p, SegmentId b);

// Single-linkage distance from `source` to every other segment of the image,
// keyed by segment id. One distance transform plus one raster sweep.
std::map<SegmentId, double> RegionDistances(const PanopticImage& image,
                                            SegmentId source);

// Distance from `p` to every segment of the image.
std::map<SegmentId, double> PointDistances(const PanopticImage& image,
                                           PixelPoint p);

}  // namespace panoground

#endif  // PANOGROUND_PANOPTIC_STORE_H_
