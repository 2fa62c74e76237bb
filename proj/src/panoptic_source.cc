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

#include "panoground/panoptic_source.h"

#include <cmath>
#include <filesystem>

#include "json.hpp"
#include "panoground/errors.h"
#include "panoground/png_io.h"

namespace panoground {

namespace {

using nlohmann::json;

int JsonInt(const json& v) {
  if (v.is_number_integer()) return v.get<int>();
  return static_cast<int>(std::floor(v.get<double>()));
}

}  // namespace

std::vector<PanopticAnnotation> ParsePanopticAnnotations(
    std::string_view json_text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(source + ": offset " + std::to_string(e.byte), e.what());
  }
  std::map<int64_t, std::pair<int, int>> sizes;
  const json* records = &doc;
  try {
    if (doc.is_object()) {
      if (doc.contains("images")) {
        for (const json& im : doc["images"]) {
          sizes[im.at("id").get<int64_t>()] = {im.at("width").get<int>(),
                                               im.at("height").get<int>()};
        }
      }
      records = &doc.at("annotations");
    }
  } catch (const json::exception& e) {
    throw ParseError(source, e.what());
  }
  if (!records->is_array()) throw ParseError(source, "annotations must be an array");

  std::vector<PanopticAnnotation> out;
  for (size_t i = 0; i < records->size(); ++i) {
    const json& r = (*records)[i];
    const std::string where = source + ": annotation " + std::to_string(i);
    try {
      PanopticAnnotation a;
      a.image_id = r.at("image_id").get<int64_t>();
      a.file_name = r.at("file_name").get<std::string>();
      for (const json& s : r.at("segments_info")) {
        SegmentRecord seg;
        const int64_t id = s.at("id").get<int64_t>();
        if (id <= 0 || id >= (int64_t{1} << 24)) {
          throw IntegrityError(where + ": segment id " + std::to_string(id) +
                               " outside (0, 2^24)");
        }
        seg.id = static_cast<SegmentId>(id);
        seg.category_id = s.at("category_id").get<int>();
        seg.area = s.at("area").get<int64_t>();
        const json& b = s.at("bbox");
        if (!b.is_array() || b.size() != 4) throw ParseError(where, "bbox needs 4 numbers");
        seg.bbox = {JsonInt(b[0]), JsonInt(b[1]), JsonInt(b[2]), JsonInt(b[3])};
        a.segments.push_back(seg);
      }
      if (auto it = sizes.find(a.image_id); it != sizes.end()) {
        a.width = it->second.first;
        a.height = it->second.second;
      }
      out.push_back(std::move(a));
    } catch (const json::exception& e) {
      throw ParseError(where, e.what());
    }
  }
  return out;
}

PanopticSource::PanopticSource(std::vector<PanopticAnnotation> annotations,
                               std::string raster_dir)
    : raster_dir_(std::move(raster_dir)) {
  for (PanopticAnnotation& a : annotations) {
    const int64_t id = a.image_id;
    if (!annotations_.emplace(id, std::move(a)).second) {
      throw IntegrityError("duplicate panoptic annotation for image " +
                           std::to_string(id));
    }
  }
}

PanopticSource PanopticSource::Load(const std::string& json_path,
                                    const std::string& raster_dir) {
  return PanopticSource(
      ParsePanopticAnnotations(ReadFileToString(json_path), json_path),
      raster_dir);
}

const PanopticAnnotation* PanopticSource::Find(int64_t image_id) const {
  auto it = annotations_.find(image_id);
  return it == annotations_.end() ? nullptr : &it->second;
}

std::string PanopticSource::RasterPath(const PanopticAnnotation& a) const {
  return (std::filesystem::path(raster_dir_) / a.file_name).string();
}

PanopticImage PanopticSource::LoadImage(int64_t image_id) const {
  const PanopticAnnotation* a = Find(image_id);
  if (a == nullptr) {
    throw NotFoundError("no panoptic annotation for image " +
                        std::to_string(image_id));
  }
  return LoadPanopticImage(*a, ReadPng(RasterPath(*a)));
}

std::pair<int, int> PanopticSource::ImageSize(int64_t image_id) const {
  const PanopticAnnotation* a = Find(image_id);
  if (a == nullptr) {
    throw NotFoundError("no panoptic annotation for image " +
                        std::to_string(image_id));
  }
  if (a->width > 0 && a->height > 0) return {a->width, a->height};
  return ReadPngSize(RasterPath(*a));
}

}  // namespace panoground
