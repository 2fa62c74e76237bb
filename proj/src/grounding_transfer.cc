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

#include "panoground/grounding_transfer.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <tuple>

#include "panoground/errors.h"
#include "panoground/parallel.h"

namespace panoground {

namespace {

int ToPixel(double normalized, int extent) {
  const int p = static_cast<int>(std::floor(normalized * extent));
  return std::clamp(p, 0, extent - 1);
}

const CategoryRecord& CategoryOf(const PanopticImage& image, SegmentId id,
                                 const CategoryIndex& categories) {
  const SegmentRecord& s = image.segment(id);
  auto it = categories.find(s.category_id);
  if (it == categories.end()) {
    throw IntegrityError("image " + std::to_string(image.image_id()) +
                         " segment " + std::to_string(id) +
                         " has unknown category " +
                         std::to_string(s.category_id));
  }
  return it->second;
}

std::string Describe(const Narrative& n) {
  return "narrative " + n.narrative_id + " (image " +
         std::to_string(n.image_id) + ")";
}

std::string DescribePhrase(const NounPhrase& p) {
  return "phrase \"" + p.text + "\" [" + std::to_string(p.first_token) + "-" +
         std::to_string(p.last_token) + "]";
}

}  // namespace

PixelPoint CenterOfMass(std::span<const TracePoint> points, int width,
                        int height) {
  if (points.empty()) throw InvalidArgumentError("center of mass of no points");
  double sx = 0, sy = 0;
  for (const TracePoint& p : points) {
    sx += p.x;
    sy += p.y;
  }
  const double n = static_cast<double>(points.size());
  return {ToPixel(sx / n, width), ToPixel(sy / n, height)};
}

PixelBox TraceBoundingBox(std::span<const TracePoint> points, int width,
                          int height) {
  PixelBox box{width, height, -1, -1};
  for (const TracePoint& p : points) {
    const int x = ToPixel(p.x, width);
    const int y = ToPixel(p.y, height);
    box.x0 = std::min(box.x0, x);
    box.y0 = std::min(box.y0, y);
    box.x1 = std::max(box.x1, x);
    box.y1 = std::max(box.y1, y);
  }
  return box;
}

std::vector<SegmentId> ExpandPlural(SegmentId seed,
                                    std::span<const TracePoint> points,
                                    const PanopticImage& image) {
  const int category = image.segment(seed).category_id;
  std::vector<SegmentId> out = {seed};
  if (points.empty()) return out;
  const PixelBox box = TraceBoundingBox(points, image.width(), image.height());
  for (const SegmentRecord& s : image.segments()) {
    if (s.id == seed || s.category_id != category) continue;
    if (box.Contains(image.extent(s.id))) out.push_back(s.id);
  }
  return out;
}

PhraseOutcome GroundPhrase(const Narrative& narrative, const NounPhrase& phrase,
                           const PanopticImage& image,
                           const GroundingContext& context) {
  const TimeWindow window =
      PhraseTimeWindow(narrative, phrase.first_token, phrase.last_token);
  const std::vector<TracePoint> points = PointsInWindow(narrative, window);
  if (points.empty()) return UngroundedPhrase{phrase, kReasonNoTrace};

  GroundedPhrase g;
  g.phrase = phrase;
  g.window = window;
  g.com = CenterOfMass(points, image.width(), image.height());

  // One agreement test per category; regions repeat categories often.
  std::map<int, std::optional<MatchRank>> rank_by_category;
  auto rank_of = [&](SegmentId id) {
    const CategoryRecord& c = CategoryOf(image, id, context.categories);
    auto it = rank_by_category.find(c.id);
    if (it == rank_by_category.end()) {
      it = rank_by_category
               .emplace(c.id, RankMatch(phrase, c, context.wordnet, context.manual))
               .first;
    }
    return it->second;
  };

  const SegmentId center = image.id_at(g.com);
  std::optional<SegmentId> chosen;
  if (center != kVoidSegment) {
    if (auto r = rank_of(center)) {
      chosen = center;
      g.match_rank = *r;
    }
  }

  if (!chosen) {
    const std::map<SegmentId, double> distances =
        center != kVoidSegment ? RegionDistances(image, center)
                               : PointDistances(image, g.com);
    // Ascending distance, then stronger rank, then smaller id.
    std::optional<std::tuple<double, MatchRank, SegmentId>> best;
    for (const auto& [id, d] : distances) {
      if (id == center || d > context.max_vicinity_distance) continue;
      const auto r = rank_of(id);
      if (!r) continue;
      const auto key = std::make_tuple(d, *r, id);
      if (!best || key < *best) best = key;
    }
    if (!best) return UngroundedPhrase{phrase, kReasonNoAgreement};
    chosen = std::get<2>(*best);
    g.match_rank = std::get<1>(*best);
    g.via_vicinity = true;
    g.vicinity_distance = std::get<0>(*best);
  }

  g.segment_ids = phrase.is_plural ? ExpandPlural(*chosen, points, image)
                                   : std::vector<SegmentId>{*chosen};
  return g;
}

GroundedNarrative TransferNarrative(const Narrative& narrative,
                                    const PanopticImage& image,
                                    const GroundingContext& context) {
  GroundedNarrative out;
  out.narrative_id = narrative.narrative_id;
  out.image_id = narrative.image_id;
  out.caption = narrative.caption;
  for (const NounPhrase& ph :
       ExtractNounPhrases(narrative, context.pos_lexicon)) {
    PhraseOutcome r = GroundPhrase(narrative, ph, image, context);
    if (auto* g = std::get_if<GroundedPhrase>(&r)) {
      out.phrases.push_back(std::move(*g));
    } else {
      out.ungrounded.push_back(std::get<UngroundedPhrase>(std::move(r)));
    }
  }
  return out;
}

TransferResult TransferDataset(std::span<const Narrative> narratives,
                               const PanopticSource& panoptic,
                               const GroundingContext& context,
                               const TransferOptions& options) {
  // One task per image so each raster is decoded once.
  std::map<int64_t, std::vector<const Narrative*>> by_image;
  for (const Narrative& n : narratives) by_image[n.image_id].push_back(&n);
  for (auto& [id, list] : by_image) {
    std::stable_sort(list.begin(), list.end(),
                     [](const Narrative* a, const Narrative* b) {
                       return a->narrative_id < b->narrative_id;
                     });
  }
  std::vector<std::pair<int64_t, std::vector<const Narrative*>>> tasks(
      by_image.begin(), by_image.end());

  struct TaskOutput {
    std::vector<GroundedNarrative> grounded;
    std::vector<std::string> diagnostics;
  };
  std::vector<TaskOutput> outputs(tasks.size());

  ParallelFor(tasks.size(), options.workers, [&](size_t t) {
    const auto& [image_id, list] = tasks[t];
    TaskOutput& out = outputs[t];
    if (panoptic.Find(image_id) == nullptr) {
      if (options.strict) {
        throw IntegrityError(Describe(*list.front()) + ": no panoptic annotation");
      }
      for (const Narrative* n : list) {
        out.diagnostics.push_back(Describe(*n) +
                                  ": skipped: no panoptic annotation");
      }
      return;
    }
    std::optional<PanopticImage> image;
    try {
      image.emplace(panoptic.LoadImage(image_id));
    } catch (const Error& e) {
      if (options.strict) throw;
      for (const Narrative* n : list) {
        out.diagnostics.push_back(Describe(*n) + ": skipped: " + e.what());
      }
      return;
    }
    for (const Narrative* n : list) {
      GroundedNarrative g;
      try {
        g = TransferNarrative(*n, *image, context);
      } catch (const IntegrityError& e) {
        if (options.strict) throw;
        out.diagnostics.push_back(Describe(*n) + ": skipped: " + e.what());
        continue;
      }
      if (n->utterance_level_timing) {
        out.diagnostics.push_back(Describe(*n) +
                                  ": utterance-level timing used for phrase windows");
      }
      for (const UngroundedPhrase& u : g.ungrounded) {
        out.diagnostics.push_back(Describe(*n) + ": " + DescribePhrase(u.phrase) +
                                  ": " + u.reason);
      }
      if (g.phrases.empty()) {
        out.diagnostics.push_back(Describe(*n) +
                                  ": omitted: no grounded phrase");
      } else {
        out.grounded.push_back(std::move(g));
      }
    }
  });

  TransferResult result;
  result.narratives_seen = narratives.size();
  for (TaskOutput& o : outputs) {
    for (GroundedNarrative& g : o.grounded) result.grounded.push_back(std::move(g));
    for (std::string& d : o.diagnostics) result.diagnostics.push_back(std::move(d));
  }
  return result;
}

}  // namespace panoground
