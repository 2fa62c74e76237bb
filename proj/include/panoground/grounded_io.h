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

// Line-delimited json for grounded annotations:
//   {narrative_id, image_id, caption,
//    phrases: [{text, first_token, last_token, is_plural, match_rank,
//               via_vicinity, com: [x, y], segment_ids: [...]}]}

#ifndef PANOGROUND_GROUNDED_IO_H_
#define PANOGROUND_GROUNDED_IO_H_

#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "panoground/grounding_transfer.h"

namespace panoground {

std::string FormatGroundedLine(const GroundedNarrative& narrative);
void WriteGroundedAnnotations(std::ostream& out,
                              std::span<const GroundedNarrative> narratives);

// Ungrounded phrases, windows and vicinity distances are not part of the
// file and come back empty/zero. Throws ParseError.
GroundedNarrative ParseGroundedLine(std::string_view line,
                                    const std::string& where);
std::vector<GroundedNarrative> LoadGroundedAnnotations(const std::string& path);

}  // namespace panoground

#endif  // PANOGROUND_GROUNDED_IO_H_
