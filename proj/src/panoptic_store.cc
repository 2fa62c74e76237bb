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

#include "panoground/panoptic_store.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <set>

#include "json.hpp"
#include "panoground/errors.h"

namespace panoground {

namespace {

constexpr int64_t kUnreachable = std::numeric_limits<int64_t>::max();

std::string Lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

// Lower envelope of parabolas (q - v)^2 + f(v) over the finite entries of f.
void DistanceTransform1d(std::span<const int64_t> f, std::span<int64_t> out,
                         std::vector<int>& v, std::vector<double>& z) {
  const int n = static_cast<int>(f.size());
  v.resize(n);
  z.resize(n + 1);
  int k = -1;
  for (int q = 0; q < n; ++q) {
    if (f[q] == kUnreachable) continue;
    if (k < 0) {
      k = 0;
      v[0] = q;
      z[0] = -std::numeric_limits<double>::infinity();
      z[1] = std::numeric_limits<double>::infinity();
      continue;
    }
    double s = 0;
    while (true) {
      const int p = v[k];
      s = (double(f[q] + int64_t(q) * q) - double(f[p] + int64_t(p) * p)) /
          double(2 * (q - p));
      if (s <= z[k]) {
        --k;
      } else {
        break;
      }
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = std::numeric_limits<double>::infinity();
  }
  if (k < 0) {
    std::fill(out.begin(), out.end(), kUnreachable);
    return;
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) ++k;
    const int64_t d = q - v[k];
    out[q] = d * d + f[v[k]];
  }
}

}  // namespace

CategoryIndex ParseCategoryIndex(std::string_view json_text,
                                 const std::string& source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(source + ": offset " + std::to_string(e.byte), e.what());
  }
  const nlohmann::json* list = &doc;
  if (doc.is_object()) {
    if (!doc.contains("categories")) {
      throw ParseError(source, "expected an array or a \"categories\" member");
    }
    list = &doc["categories"];
  }
  if (!list->is_array()) throw ParseError(source, "categories must be an array");

  CategoryIndex index;
  for (size_t i = 0; i < list->size(); ++i) {
    const auto& entry = (*list)[i];
    const std::string where = source + ": entry " + std::to_string(i);
    try {
      CategoryRecord rec;
      rec.id = entry.at("id").get<int>();
      rec.name = Lowercase(entry.at("name").get<std::string>());
      const auto& thing = entry.at("isthing");
      rec.is_thing = thing.is_boolean() ? thing.get<bool>() : thing.get<int>() != 0;
      if (rec.name.empty()) throw ParseError(where, "empty category name");
      if (!index.emplace(rec.id, rec).second) {
        throw IntegrityError(where + ": duplicate category id " +
                             std::to_string(rec.id));
      }
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(where, e.what());
    }
  }
  return index;
}

CategoryIndex LoadCategoryIndex(const std::string& path) {
  return ParseCategoryIndex(ReadFileToString(path), path);
}

std::vector<SegmentId> DecodeRaster(const RgbImage& raster) {
  std::vector<SegmentId> ids(size_t(raster.width) * raster.height);
  const uint8_t* p = raster.pixels.data();
  for (size_t i = 0; i < ids.size(); ++i, p += 3) {
    ids[i] = DecodeSegmentId(p[0], p[1], p[2]);
  }
  return ids;
}

void PanopticImage::Index() {
  std::sort(segments_.begin(), segments_.end(),
            [](const SegmentRecord& a, const SegmentRecord& b) {
              return a.id < b.id;
            });
  position_.clear();
  for (size_t i = 0; i < segments_.size(); ++i) position_[segments_[i].id] = i;
  extents_.assign(segments_.size(), PixelBox{width_, height_, -1, -1});
  pixel_counts_.assign(segments_.size(), 0);
  annotated_pixels_ = 0;
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      const SegmentId id = id_at(x, y);
      if (id == kVoidSegment) continue;
      auto it = position_.find(id);
      if (it == position_.end()) {
        throw IntegrityError("image " + std::to_string(image_id_) +
                             ": raster id " + std::to_string(id) +
                             " has no segment record");
      }
      PixelBox& e = extents_[it->second];
      e.x0 = std::min(e.x0, x);
      e.y0 = std::min(e.y0, y);
      e.x1 = std::max(e.x1, x);
      e.y1 = std::max(e.y1, y);
      ++pixel_counts_[it->second];
      ++annotated_pixels_;
    }
  }
}

size_t PanopticImage::IndexOf(SegmentId id) const {
  auto it = position_.find(id);
  if (it == position_.end()) {
    throw NotFoundError("image " + std::to_string(image_id_) +
                        " has no segment " + std::to_string(id));
  }
  return it->second;
}

PanopticImage PanopticImage::FromIds(const PanopticAnnotation& annotation,
                                     int width, int height,
                                     std::vector<SegmentId> ids) {
  const std::string where = "image " + std::to_string(annotation.image_id);
  if (ids.size() != size_t(width) * height) {
    throw IntegrityError(where + ": raster size does not match dimensions");
  }
  if ((annotation.width != 0 && annotation.width != width) ||
      (annotation.height != 0 && annotation.height != height)) {
    throw IntegrityError(where + ": annotation is " +
                         std::to_string(annotation.width) + "x" +
                         std::to_string(annotation.height) + " but raster is " +
                         std::to_string(width) + "x" + std::to_string(height));
  }
  PanopticImage img;
  img.image_id_ = annotation.image_id;
  img.file_name_ = annotation.file_name;
  img.width_ = width;
  img.height_ = height;
  img.ids_ = std::move(ids);
  img.segments_ = annotation.segments;

  std::set<SegmentId> seen;
  for (const SegmentRecord& s : img.segments_) {
    const std::string seg = where + " segment " + std::to_string(s.id);
    if (s.id == kVoidSegment) throw IntegrityError(where + ": segment id 0");
    if (!seen.insert(s.id).second) throw IntegrityError(seg + ": duplicate id");
    if (s.area <= 0) throw IntegrityError(seg + ": non-positive area");
    const BoundingBox& b = s.bbox;
    if (b.x < 0 || b.y < 0 || b.w < 0 || b.h < 0 || b.x + b.w > width ||
        b.y + b.h > height) {
      throw IntegrityError(seg + ": bbox outside image");
    }
    if (s.area > int64_t(b.w) * b.h) {
      throw IntegrityError(seg + ": area exceeds bbox");
    }
  }
  img.Index();
  for (size_t i = 0; i < img.segments_.size(); ++i) {
    const SegmentRecord& s = img.segments_[i];
    if (img.pixel_counts_[i] == 0) {
      throw IntegrityError(where + " segment " + std::to_string(s.id) +
                           ": absent from raster");
    }
    if (img.pixel_counts_[i] != s.area) {
      throw IntegrityError(where + " segment " + std::to_string(s.id) +
                           ": declared area " + std::to_string(s.area) +
                           " but raster has " +
                           std::to_string(img.pixel_counts_[i]));
    }
  }
  return img;
}

PanopticImage PanopticImage::FromUnannotatedIds(int64_t image_id, int width,
                                                int height,
                                                std::vector<SegmentId> ids) {
  if (ids.size() != size_t(width) * height) {
    throw IntegrityError("image " + std::to_string(image_id) +
                         ": raster size does not match dimensions");
  }
  PanopticImage img;
  img.image_id_ = image_id;
  img.width_ = width;
  img.height_ = height;
  img.ids_ = std::move(ids);
  std::set<SegmentId> present(img.ids_.begin(), img.ids_.end());
  present.erase(kVoidSegment);
  for (SegmentId id : present) img.segments_.push_back({id, 0, 0, {}});
  img.Index();
  for (size_t i = 0; i < img.segments_.size(); ++i) {
    SegmentRecord& s = img.segments_[i];
    const PixelBox& e = img.extents_[i];
    s.area = img.pixel_counts_[i];
    s.bbox = {e.x0, e.y0, e.x1 - e.x0 + 1, e.y1 - e.y0 + 1};
  }
  return img;
}

const SegmentRecord* PanopticImage::FindSegment(SegmentId id) const {
  auto it = position_.find(id);
  return it == position_.end() ? nullptr : &segments_[it->second];
}

const SegmentRecord& PanopticImage::segment(SegmentId id) const {
  return segments_[IndexOf(id)];
}

const PixelBox& PanopticImage::extent(SegmentId id) const {
  return extents_[IndexOf(id)];
}

PanopticImage LoadPanopticImage(const PanopticAnnotation& annotation,
                                const RgbImage& raster) {
  return PanopticImage::FromIds(annotation, raster.width, raster.height,
                                DecodeRaster(raster));
}

BinaryMask MaskOf(const PanopticImage& image, std::span<const SegmentId> ids) {
  if (ids.empty()) throw InvalidArgumentError("MaskOf needs at least one id");
  for (SegmentId id : ids) image.segment(id);
  BinaryMask mask(image.width(), image.height());
  const std::set<SegmentId> wanted(ids.begin(), ids.end());
  if (wanted.size() == 1) {
    const SegmentId only = *wanted.begin();
    for (int y = 0; y < image.height(); ++y) {
      for (int x = 0; x < image.width(); ++x) {
        if (image.id_at(x, y) == only) mask.Set(x, y);
      }
    }
    return mask;
  }
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      if (wanted.contains(image.id_at(x, y))) mask.Set(x, y);
    }
  }
  return mask;
}

std::vector<int64_t> SquaredDistanceTransform(int width, int height,
                                              std::span<const uint8_t> seeds) {
  if (seeds.size() != size_t(width) * height) {
    throw InvalidArgumentError("seed raster size mismatch");
  }
  std::vector<int64_t> column_pass(seeds.size());
  std::vector<int64_t> out(seeds.size());
  std::vector<int64_t> f(std::max(width, height));
  std::vector<int64_t> g(std::max(width, height));
  std::vector<int> v;
  std::vector<double> z;

  for (int x = 0; x < width; ++x) {
    for (int y = 0; y < height; ++y) {
      f[y] = seeds[size_t(y) * width + x] ? 0 : kUnreachable;
    }
    DistanceTransform1d(std::span(f.data(), height), std::span(g.data(), height),
                        v, z);
    for (int y = 0; y < height; ++y) column_pass[size_t(y) * width + x] = g[y];
  }
  for (int y = 0; y < height; ++y) {
    DistanceTransform1d(std::span(column_pass.data() + size_t(y) * width, width),
                        std::span(out.data() + size_t(y) * width, width), v, z);
  }
  return out;
}

std::map<SegmentId, double> RegionDistances(const PanopticImage& image,
                                            SegmentId source) {
  image.segment(source);
  const auto ids = image.ids();
  std::vector<uint8_t> seeds(ids.size());
  for (size_t i = 0; i < ids.size(); ++i) seeds[i] = ids[i] == source;
  const std::vector<int64_t> dt =
      SquaredDistanceTransform(image.width(), image.height(), seeds);

  std::unordered_map<SegmentId, int64_t> best;
  for (size_t i = 0; i < ids.size(); ++i) {
    const SegmentId id = ids[i];
    if (id == kVoidSegment || id == source) continue;
    auto [it, inserted] = best.emplace(id, dt[i]);
    if (!inserted) it->second = std::min(it->second, dt[i]);
  }
  std::map<SegmentId, double> out;
  for (const auto& [id, d2] : best) out[id] = std::sqrt(double(d2));
  return out;
}

std::map<SegmentId, double> PointDistances(const PanopticImage& image,
                                           PixelPoint p) {
  if (p.x < 0 || p.y < 0 || p.x >= image.width() || p.y >= image.height()) {
    throw InvalidArgumentError("point outside image");
  }
  std::unordered_map<SegmentId, int64_t> best;
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      const SegmentId id = image.id_at(x, y);
      if (id == kVoidSegment) continue;
      const int64_t dx = x - p.x, dy = y - p.y;
      const int64_t d2 = dx * dx + dy * dy;
      auto [it, inserted] = best.emplace(id, d2);
      if (!inserted) it->second = std::min(it->second, d2);
    }
  }
  std::map<SegmentId, double> out;
  for (const auto& [id, d2] : best) out[id] = std::sqrt(double(d2));
  return out;
}

double RegionMinDistance(const PanopticImage& image, SegmentId a, SegmentId b) {
  if (a == b) throw InvalidArgumentError("RegionMinDistance needs two segments");
  image.segment(b);
  return RegionDistances(image, a).at(b);
}

double PointMinDistance(const PanopticImage& image, PixelPoint p, SegmentId b) {
  image.segment(b);
  return PointDistances(image, p).at(b);
}

}  // namespace panoground
