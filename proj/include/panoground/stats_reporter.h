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

#ifndef PANOGROUND_STATS_REPORTER_H_
#define PANOGROUND_STATS_REPORTER_H_

#include <span>
#include <string>

#include "json.hpp"
#include "panoground/grounding_transfer.h"
#include "panoground/narrative_store.h"
#include "panoground/panoptic_source.h"
#include "panoground/phrase_chunker.h"

namespace panoground {

struct StatsReport {
  // Raw counters.
  size_t narratives = 0;
  size_t grounded_narratives = 0;
  size_t total_phrases = 0;  // chunker output over all narratives
  size_t total_matched_phrases = 0;
  size_t segments_matched = 0;         // (phrase, segment) pairs
  size_t unique_segments_matched = 0;  // distinct (image, segment)
  size_t total_segments = 0;
  int64_t total_pixels = 0;
  int64_t annotated_pixels = 0;
  int64_t matched_pixels = 0;

  double phrases_per_narrative_matched = 0;
  double phrases_per_narrative_total = 0;
  double phrase_coverage = 0;
  double segment_coverage = 0;
  double pixel_coverage_all = 0;
  double pixel_coverage_annotated = 0;
  double things_fraction = 0;
  double stuff_fraction = 0;
  double exact_match_fraction = 0;
  double plural_fraction = 0;
  double vicinity_fraction = 0;
};

// Segment and pixel denominators range over every image of `panoptic`.
// Throws NotFoundError listing grounded image ids that have no panoptic
// annotation.
StatsReport ComputeStats(std::span<const GroundedNarrative> grounded,
                         std::span<const Narrative> narratives,
                         const PanopticSource& panoptic,
                         const CategoryIndex& categories,
                         const PosLexicon& lexicon, int workers);

nlohmann::ordered_json StatsToJson(const StatsReport& report);
std::string StatsToTable(const StatsReport& report);

}  // namespace panoground

#endif  // PANOGROUND_STATS_REPORTER_H_
