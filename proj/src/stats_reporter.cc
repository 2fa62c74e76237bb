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

#include "panoground/stats_reporter.h"

#include <cstdio>
#include <set>
#include <unordered_map>

#include "panoground/errors.h"
#include "panoground/parallel.h"

namespace panoground {

namespace {

double Ratio(double num, double den) { return den > 0 ? num / den : 0.0; }

}  // namespace

StatsReport ComputeStats(std::span<const GroundedNarrative> grounded,
                         std::span<const Narrative> narratives,
                         const PanopticSource& panoptic,
                         const CategoryIndex& categories,
                         const PosLexicon& lexicon, int workers) {
  StatsReport r;
  r.narratives = narratives.size();

  std::vector<size_t> phrase_counts(narratives.size());
  ParallelFor(narratives.size(), workers, [&](size_t i) {
    phrase_counts[i] = ExtractNounPhrases(narratives[i], lexicon).size();
  });
  for (size_t c : phrase_counts) r.total_phrases += c;

  std::set<int64_t> missing;
  for (const GroundedNarrative& n : grounded) {
    if (panoptic.Find(n.image_id) == nullptr) missing.insert(n.image_id);
  }
  if (!missing.empty()) {
    std::string list;
    for (int64_t id : missing) list += (list.empty() ? "" : ", ") + std::to_string(id);
    throw NotFoundError("no panoptic annotation for images: " + list);
  }

  const auto& annotations = panoptic.annotations();
  std::vector<std::pair<int64_t, const PanopticAnnotation*>> images;
  for (const auto& [id, a] : annotations) images.emplace_back(id, &a);
  std::vector<int64_t> pixels(images.size());
  ParallelFor(images.size(), workers, [&](size_t i) {
    const auto [w, h] = panoptic.ImageSize(images[i].first);
    pixels[i] = int64_t(w) * h;
  });
  for (size_t i = 0; i < images.size(); ++i) {
    r.total_pixels += pixels[i];
    r.total_segments += images[i].second->segments.size();
    for (const SegmentRecord& s : images[i].second->segments) {
      r.annotated_pixels += s.area;
    }
  }

  size_t things = 0, exact = 0, plural = 0, vicinity = 0;
  std::set<std::pair<int64_t, SegmentId>> unique;
  for (const GroundedNarrative& n : grounded) {
    const PanopticAnnotation& a = *panoptic.Find(n.image_id);
    std::unordered_map<SegmentId, const SegmentRecord*> by_id;
    for (const SegmentRecord& s : a.segments) by_id[s.id] = &s;
    if (!n.phrases.empty()) ++r.grounded_narratives;
    for (const GroundedPhrase& g : n.phrases) {
      ++r.total_matched_phrases;
      r.segments_matched += g.segment_ids.size();
      for (SegmentId id : g.segment_ids) {
        if (!by_id.contains(id)) {
          throw IntegrityError("narrative " + n.narrative_id + " references segment " +
                               std::to_string(id) + " absent from image " +
                               std::to_string(n.image_id));
        }
        if (unique.emplace(n.image_id, id).second) {
          r.matched_pixels += by_id[id]->area;
        }
      }
      const SegmentRecord& first = *by_id[g.segment_ids.front()];
      auto cat = categories.find(first.category_id);
      if (cat == categories.end()) {
        throw IntegrityError("unknown category " + std::to_string(first.category_id));
      }
      things += cat->second.is_thing;
      exact += g.match_rank == MatchRank::kExact;
      plural += g.phrase.is_plural;
      vicinity += g.via_vicinity;
    }
  }
  r.unique_segments_matched = unique.size();

  const double matched = double(r.total_matched_phrases);
  r.phrases_per_narrative_matched = Ratio(matched, double(r.narratives));
  r.phrases_per_narrative_total = Ratio(double(r.total_phrases), double(r.narratives));
  r.phrase_coverage = Ratio(matched, double(r.total_phrases));
  r.segment_coverage =
      Ratio(double(r.unique_segments_matched), double(r.total_segments));
  r.pixel_coverage_all = Ratio(double(r.matched_pixels), double(r.total_pixels));
  r.pixel_coverage_annotated =
      Ratio(double(r.matched_pixels), double(r.annotated_pixels));
  r.things_fraction = Ratio(double(things), matched);
  r.stuff_fraction = r.total_matched_phrases ? 1.0 - r.things_fraction : 0.0;
  r.exact_match_fraction = Ratio(double(exact), matched);
  r.plural_fraction = Ratio(double(plural), matched);
  r.vicinity_fraction = Ratio(double(vicinity), matched);
  return r;
}

nlohmann::ordered_json StatsToJson(const StatsReport& r) {
  nlohmann::ordered_json j;
  j["narratives"] = r.narratives;
  j["grounded_narratives"] = r.grounded_narratives;
  j["total_phrases"] = r.total_phrases;
  j["total_matched_phrases"] = r.total_matched_phrases;
  j["phrases_per_narrative_matched"] = r.phrases_per_narrative_matched;
  j["phrases_per_narrative_total"] = r.phrases_per_narrative_total;
  j["phrase_coverage"] = r.phrase_coverage;
  j["segments_matched"] = r.segments_matched;
  j["unique_segments_matched"] = r.unique_segments_matched;
  j["total_segments"] = r.total_segments;
  j["segment_coverage"] = r.segment_coverage;
  j["total_pixels"] = r.total_pixels;
  j["annotated_pixels"] = r.annotated_pixels;
  j["matched_pixels"] = r.matched_pixels;
  j["pixel_coverage_all"] = r.pixel_coverage_all;
  j["pixel_coverage_annotated"] = r.pixel_coverage_annotated;
  j["things_fraction"] = r.things_fraction;
  j["stuff_fraction"] = r.stuff_fraction;
  j["exact_match_fraction"] = r.exact_match_fraction;
  j["plural_fraction"] = r.plural_fraction;
  j["vicinity_fraction"] = r.vicinity_fraction;
  return j;
}

std::string StatsToTable(const StatsReport& r) {
  std::string out;
  char line[128];
  auto count = [&](const char* name, double v) {
    std::snprintf(line, sizeof(line), "%-32s %14.0f\n", name, v);
    out += line;
  };
  auto mean = [&](const char* name, double v) {
    std::snprintf(line, sizeof(line), "%-32s %14.2f\n", name, v);
    out += line;
  };
  auto percent = [&](const char* name, double v) {
    std::snprintf(line, sizeof(line), "%-32s %13.1f%%\n", name, 100.0 * v);
    out += line;
  };
  count("narratives", double(r.narratives));
  count("grounded narratives", double(r.grounded_narratives));
  count("noun phrases", double(r.total_phrases));
  count("matched noun phrases", double(r.total_matched_phrases));
  mean("matched phrases / narrative", r.phrases_per_narrative_matched);
  mean("phrases / narrative", r.phrases_per_narrative_total);
  percent("phrase coverage", r.phrase_coverage);
  count("segments matched", double(r.segments_matched));
  count("unique segments matched", double(r.unique_segments_matched));
  percent("segment coverage", r.segment_coverage);
  percent("pixel coverage (all)", r.pixel_coverage_all);
  percent("pixel coverage (annotated)", r.pixel_coverage_annotated);
  percent("things", r.things_fraction);
  percent("stuff", r.stuff_fraction);
  percent("exact matches", r.exact_match_fraction);
  percent("plurals", r.plural_fraction);
  percent("vicinity matches", r.vicinity_fraction);
  return out;
}

}  // namespace panoground
