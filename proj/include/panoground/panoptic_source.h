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

#ifndef PANOGROUND_PANOPTIC_SOURCE_H_
#define PANOGROUND_PANOPTIC_SOURCE_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "panoground/panoptic_store.h"

namespace panoground {

// Accepts a COCO panoptic json object ({annotations, images?, ...}) or a
// bare array of {image_id, file_name, segments_info} records. Image sizes
// are taken from "images" when present. Throws ParseError/IntegrityError.
std::vector<PanopticAnnotation> ParsePanopticAnnotations(
    std::string_view json_text, const std::string& source = "<memory>");

// Annotation records plus the directory holding their PNG id-rasters.
class PanopticSource {
 public:
  PanopticSource() = default;
  PanopticSource(std::vector<PanopticAnnotation> annotations,
                 std::string raster_dir);
  static PanopticSource Load(const std::string& json_path,
                             const std::string& raster_dir);

  const PanopticAnnotation* Find(int64_t image_id) const;
  const std::map<int64_t, PanopticAnnotation>& annotations() const {
    return annotations_;
  }
  const std::string& raster_dir() const { return raster_dir_; }

  std::string RasterPath(const PanopticAnnotation& annotation) const;
  // Reads and validates the raster. Throws NotFoundError for unknown ids.
  PanopticImage LoadImage(int64_t image_id) const;
  // {width, height}; read from the PNG header when the json has no sizes.
  std::pair<int, int> ImageSize(int64_t image_id) const;

 private:
  std::map<int64_t, PanopticAnnotation> annotations_;
  std::string raster_dir_;
};

}  // namespace panoground

#endif  // PANOGROUND_PANOPTIC_SOURCE_H_
