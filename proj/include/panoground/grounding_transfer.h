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

// Transfers timed captions with mouse traces onto panoptic regions.
//
// For every noun phrase: take the trace points drawn while the phrase was
// spoken, average them into a center of mass (CoM), and propose the region
// under the CoM. The proposal stands if the phrase semantically agrees with
// the region's category. Otherwise every other region is ranked by distance
// (single-linkage to the center region, or to the CoM itself when it lies on
// void) and the closest agreeing region wins. Plural phrases then grow the
// chosen seed with all same-category regions that fit inside the trace's
// bounding box.

#ifndef PANOGROUND_GROUNDING_TRANSFER_H_
#define PANOGROUND_GROUNDING_TRANSFER_H_

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "panoground/lexical_matcher.h"
#include "panoground/narrative_store.h"
#include "panoground/panoptic_source.h"
#include "panoground/panoptic_store.h"
#include "panoground/phrase_chunker.h"

namespace panoground {

struct GroundedPhrase {
  NounPhrase phrase;
  PixelPoint com;
  TimeWindow window;
  // Seed first, then any plural additions in ascending id order.
  std::vector<SegmentId> segment_ids;
  MatchRank match_rank = MatchRank::kExact;
  bool via_vicinity = false;
  double vicinity_distance = 0;
};

inline constexpr const char kReasonNoTrace[] = "no trace";
inline constexpr const char kReasonNoAgreement[] = "no agreement";

struct UngroundedPhrase {
  NounPhrase phrase;
  std::string reason;
};

struct GroundedNarrative {
  std::string narrative_id;
  int64_t image_id = 0;
  std::string caption;
  std::vector<GroundedPhrase> phrases;
  std::vector<UngroundedPhrase> ungrounded;
};

// Shared read-only inputs for grounding.
struct GroundingContext {
  const PosLexicon& pos_lexicon;
  const WordNet& wordnet;
  const ManualTable& manual;
  const CategoryIndex& categories;
  // Regions farther than this from the probe are never vicinity candidates.
  double max_vicinity_distance = std::numeric_limits<double>::infinity();
};

// Mean of the normalized coordinates scaled to pixels; the pixel whose area
// contains that position, clamped into the image. InvalidArgumentError on an
// empty point list.
PixelPoint CenterOfMass(std::span<const TracePoint> points, int width,
                        int height);

// Tightest pixel box holding every point (same pixel mapping as the CoM).
PixelBox TraceBoundingBox(std::span<const TracePoint> points, int width,
                          int height);

// Seed plus every region of the seed's category lying entirely inside the
// trace bounding box.
std::vector<SegmentId> ExpandPlural(SegmentId seed,
                                    std::span<const TracePoint> points,
                                    const PanopticImage& image);

using PhraseOutcome = std::variant<GroundedPhrase, UngroundedPhrase>;

PhraseOutcome GroundPhrase(const Narrative& narrative, const NounPhrase& phrase,
                           const PanopticImage& image,
                           const GroundingContext& context);

GroundedNarrative TransferNarrative(const Narrative& narrative,
                                    const PanopticImage& image,
                                    const GroundingContext& context);

struct TransferOptions {
  int workers = 1;
  // Rethrow integrity errors instead of recording a diagnostic.
  bool strict = false;
};

struct TransferResult {
  // Narratives with at least one grounded phrase, sorted by
  // (image_id, narrative_id).
  std::vector<GroundedNarrative> grounded;
  std::vector<std::string> diagnostics;
  size_t narratives_seen = 0;
};

TransferResult TransferDataset(std::span<const Narrative> narratives,
                               const PanopticSource& panoptic,
                               const GroundingContext& context,
                               const TransferOptions& options);

}  // namespace panoground

#endif  // PANOGROUND_GROUNDING_TRANSFER_H_
