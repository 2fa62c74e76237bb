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

#ifndef PANOGROUND_RENDER_H_
#define PANOGROUND_RENDER_H_

#include <array>
#include <cstdint>

#include "panoground/grounding_transfer.h"
#include "panoground/png_io.h"

namespace panoground {

// Tint of the i-th phrase; cycles through a fixed saturated palette. Every
// tint has distinct channels so it never collides with the gray base.
std::array<uint8_t, 3> PhraseTint(size_t index);

// Grounded segments painted in their phrase's tint (later phrases over
// earlier ones), the mouse trace as a white polyline per stroke and each
// phrase's CoM as a black cross. Without `base` the background is a gray
// rendering of the panoptic regions. `grounded` may be null.
RgbImage RenderOverlay(const Narrative& narrative,
                       const GroundedNarrative* grounded,
                       const PanopticImage& image, const RgbImage* base);

}  // namespace panoground

#endif  // PANOGROUND_RENDER_H_
