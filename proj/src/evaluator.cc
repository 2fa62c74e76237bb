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

#include "panoground/evaluator.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <unordered_map>

#include "panoground/errors.h"
#include "panoground/parallel.h"
#include "panoground/png_io.h"

namespace panoground {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

SubsetReport Score(std::span<const double> ious,
                   std::span<const double> thresholds) {
  SubsetReport r;
  r.phrases = ious.size();
  r.curve = ComputeRecallCurve(ious, thresholds);
  r.average_recall = AverageRecall(r.curve);
  return r;
}

ordered_json SubsetJson(const std::optional<SubsetReport>& s) {
  if (!s) return nullptr;
  ordered_json j;
  j["phrases"] = s->phrases;
  j["average_recall"] = s->average_recall;
  j["recall"] = s->curve.recall;
  return j;
}

// Per-image work list in canonical (image_id, narrative_id) order.
std::vector<std::pair<int64_t, std::vector<const GroundedNarrative*>>>
GroupByImage(std::span<const GroundedNarrative> truth) {
  std::map<int64_t, std::vector<const GroundedNarrative*>> groups;
  for (const GroundedNarrative& n : truth) groups[n.image_id].push_back(&n);
  for (auto& [id, list] : groups) {
    std::stable_sort(list.begin(), list.end(),
                     [](const GroundedNarrative* a, const GroundedNarrative* b) {
                       return a->narrative_id < b->narrative_id;
                     });
  }
  return {groups.begin(), groups.end()};
}

template <typename PerNarrative>
std::vector<PhraseScore> ScoreAll(std::span<const GroundedNarrative> truth,
                                  const PanopticSource& panoptic, int workers,
                                  PerNarrative&& per_narrative) {
  const auto tasks = GroupByImage(truth);
  std::vector<std::vector<PhraseScore>> outputs(tasks.size());
  ParallelFor(tasks.size(), workers, [&](size_t t) {
    const PanopticImage image = panoptic.LoadImage(tasks[t].first);
    for (const GroundedNarrative* n : tasks[t].second) {
      per_narrative(*n, image, outputs[t]);
    }
  });
  std::vector<PhraseScore> scores;
  for (auto& o : outputs) {
    for (PhraseScore& s : o) scores.push_back(std::move(s));
  }
  return scores;
}

PhraseScore MakeScore(const GroundedNarrative& n, size_t index,
                      const PanopticImage& image,
                      const CategoryIndex& categories, double iou) {
  const GroundedPhrase& g = n.phrases[index];
  return {n.narrative_id, static_cast<int>(index), g.phrase.text,
          IsThingPhrase(g, image, categories), g.phrase.is_plural, iou};
}

}  // namespace

PhrasePrediction ParsePredictionLine(std::string_view line,
                                     const std::string& where) {
  PhrasePrediction p;
  try {
    const json j = json::parse(line);
    const auto& id = j.at("narrative_id");
    p.narrative_id = id.is_string() ? id.get<std::string>() : id.dump();
    p.phrase_index = j.at("phrase_index").get<int>();
    if (j.contains("masks")) {
      for (const auto& m : j["masks"]) {
        p.masks.push_back(BinaryMask::ParseRle(m.get<std::string>()));
      }
    }
    if (j.contains("proposal_segment_ids")) {
      p.proposal_segment_ids =
          j["proposal_segment_ids"].get<std::vector<SegmentId>>();
    }
  } catch (const json::parse_error& e) {
    throw ParseError(where + " offset " + std::to_string(e.byte), e.what());
  } catch (const json::exception& e) {
    throw ParseError(where, e.what());
  } catch (const ParseError& e) {
    throw ParseError(where, e.what());
  }
  return p;
}

PredictionIndex LoadPredictions(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  PredictionIndex index;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    PhrasePrediction p =
        ParsePredictionLine(line, path + ":" + std::to_string(number));
    PredictionKey key{p.narrative_id, p.phrase_index};
    index.insert_or_assign(std::move(key), std::move(p));
  }
  return index;
}

std::vector<double> ThresholdGrid(int points) {
  if (points < 1) throw InvalidArgumentError("threshold grid needs >= 1 point");
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) grid[i] = double(i + 1) / double(points);
  return grid;
}

RecallCurve ComputeRecallCurve(std::span<const double> ious,
                               std::span<const double> thresholds) {
  if (ious.empty()) throw InvalidArgumentError("no ground-truth phrases");
  if (thresholds.empty()) throw InvalidArgumentError("empty threshold grid");
  for (size_t i = 0; i < thresholds.size(); ++i) {
    if (!(thresholds[i] > 0 && thresholds[i] <= 1) ||
        (i > 0 && !(thresholds[i] > thresholds[i - 1]))) {
      throw InvalidArgumentError("thresholds must ascend strictly within (0, 1]");
    }
  }
  std::vector<double> sorted(ious.begin(), ious.end());
  std::sort(sorted.begin(), sorted.end());
  RecallCurve curve;
  curve.thresholds.assign(thresholds.begin(), thresholds.end());
  for (double t : thresholds) {
    const auto first = std::lower_bound(sorted.begin(), sorted.end(), t);
    const size_t hits = static_cast<size_t>(sorted.end() - first);
    curve.recall.push_back(double(hits) / double(sorted.size()));
  }
  return curve;
}

double AverageRecall(const RecallCurve& curve) {
  if (curve.recall.empty()) return 0;
  double sum = 0;
  for (double r : curve.recall) sum += r;
  return sum / double(curve.recall.size());
}

double PhraseIou(const GroundedPhrase& truth, const PhrasePrediction* prediction,
                 const PanopticImage& image, const PanopticImage* proposals) {
  if (prediction == nullptr ||
      (prediction->masks.empty() && prediction->proposal_segment_ids.empty())) {
    return 0.0;
  }
  const BinaryMask gt = MaskOf(image, truth.segment_ids);
  std::vector<BinaryMask> parts = prediction->masks;
  if (!prediction->proposal_segment_ids.empty()) {
    if (proposals == nullptr) {
      throw InvalidArgumentError("prediction for " + prediction->narrative_id +
                                 " references proposals but none were given");
    }
    parts.push_back(MaskOf(*proposals, prediction->proposal_segment_ids));
  }
  return Iou(gt, MaskUnion(parts));
}

std::vector<PhrasePrediction> OracleAssign(const GroundedNarrative& truth,
                                           const PanopticImage& image,
                                           const PanopticImage& proposals) {
  if (image.width() != proposals.width() || image.height() != proposals.height()) {
    throw InvalidArgumentError("proposal raster size differs from image " +
                               std::to_string(image.image_id()));
  }
  std::vector<PhrasePrediction> out;
  if (proposals.segments().empty()) return out;
  for (size_t i = 0; i < truth.phrases.size(); ++i) {
    const auto& ids = truth.phrases[i].segment_ids;
    const BinaryMask gt = MaskOf(image, ids);
    std::unordered_map<SegmentId, int64_t> inter;
    for (int y = 0; y < image.height(); ++y) {
      for (int x = 0; x < image.width(); ++x) {
        if (!gt.Get(x, y)) continue;
        const SegmentId p = proposals.id_at(x, y);
        if (p != kVoidSegment) ++inter[p];
      }
    }
    // Compare inter/union exactly as integer cross products.
    SegmentId best = proposals.segments().front().id;
    int64_t best_inter = 0;
    int64_t best_union = int64_t(gt.count()) + proposals.segments().front().area;
    for (const SegmentRecord& s : proposals.segments()) {
      auto it = inter.find(s.id);
      const int64_t in = it == inter.end() ? 0 : it->second;
      const int64_t un = int64_t(gt.count()) + s.area - in;
      if (in * best_union > best_inter * un) {
        best = s.id;
        best_inter = in;
        best_union = un;
      }
    }
    PhrasePrediction p;
    p.narrative_id = truth.narrative_id;
    p.phrase_index = static_cast<int>(i);
    p.proposal_segment_ids = {best};
    out.push_back(std::move(p));
  }
  return out;
}

ArReport Disaggregate(std::span<const PhraseScore> scores,
                      std::span<const double> thresholds) {
  ArReport report;
  report.thresholds.assign(thresholds.begin(), thresholds.end());
  report.per_phrase.assign(scores.begin(), scores.end());
  std::vector<double> all, things, stuff, singular, plural;
  for (const PhraseScore& s : scores) {
    all.push_back(s.iou);
    (s.is_thing ? things : stuff).push_back(s.iou);
    (s.is_plural ? plural : singular).push_back(s.iou);
  }
  report.overall = Score(all, thresholds);
  if (!things.empty()) report.things = Score(things, thresholds);
  if (!stuff.empty()) report.stuff = Score(stuff, thresholds);
  if (!singular.empty()) report.singular = Score(singular, thresholds);
  if (!plural.empty()) report.plural = Score(plural, thresholds);
  return report;
}

ordered_json ReportToJson(const ArReport& report) {
  ordered_json j;
  j["average_recall"] = report.overall.average_recall;
  j["phrases"] = report.overall.phrases;
  j["thresholds"] = report.thresholds;
  j["recall"] = report.overall.curve.recall;
  j["things"] = SubsetJson(report.things);
  j["stuff"] = SubsetJson(report.stuff);
  j["singular"] = SubsetJson(report.singular);
  j["plural"] = SubsetJson(report.plural);
  ordered_json rows = ordered_json::array();
  for (const PhraseScore& s : report.per_phrase) {
    ordered_json r;
    r["narrative_id"] = s.narrative_id;
    r["phrase_index"] = s.phrase_index;
    r["text"] = s.text;
    r["is_thing"] = s.is_thing;
    r["is_plural"] = s.is_plural;
    r["iou"] = s.iou;
    rows.push_back(std::move(r));
  }
  j["per_phrase"] = std::move(rows);
  return j;
}

bool IsThingPhrase(const GroundedPhrase& phrase, const PanopticImage& image,
                   const CategoryIndex& categories) {
  const SegmentRecord& s = image.segment(phrase.segment_ids.front());
  auto it = categories.find(s.category_id);
  if (it == categories.end()) {
    throw IntegrityError("unknown category " + std::to_string(s.category_id) +
                         " in image " + std::to_string(image.image_id()));
  }
  return it->second.is_thing;
}

PanopticImage LoadProposals(const std::string& proposals_dir,
                            const PanopticImage& truth_image) {
  const std::string path =
      (std::filesystem::path(proposals_dir) / truth_image.file_name()).string();
  const RgbImage raster = ReadPng(path);
  if (raster.width != truth_image.width() || raster.height != truth_image.height()) {
    throw IntegrityError("proposal raster " + path + " size differs from image");
  }
  return PanopticImage::FromUnannotatedIds(truth_image.image_id(), raster.width,
                                           raster.height, DecodeRaster(raster));
}

std::vector<PhraseScore> ScorePredictions(
    std::span<const GroundedNarrative> truth, const PanopticSource& panoptic,
    const CategoryIndex& categories, const PredictionIndex& predictions,
    const std::string& proposals_dir, int workers) {
  return ScoreAll(truth, panoptic, workers,
                  [&](const GroundedNarrative& n, const PanopticImage& image,
                      std::vector<PhraseScore>& out) {
    std::optional<PanopticImage> proposals;
    for (size_t i = 0; i < n.phrases.size(); ++i) {
      auto it = predictions.find({n.narrative_id, static_cast<int>(i)});
      const PhrasePrediction* p = it == predictions.end() ? nullptr : &it->second;
      if (p != nullptr && !p->proposal_segment_ids.empty() && !proposals) {
        if (proposals_dir.empty()) {
          throw InvalidArgumentError("predictions reference proposal ids; "
                                     "a proposals directory is required");
        }
        proposals.emplace(LoadProposals(proposals_dir, image));
      }
      const double iou =
          PhraseIou(n.phrases[i], p, image, proposals ? &*proposals : nullptr);
      out.push_back(MakeScore(n, i, image, categories, iou));
    }
  });
}

std::vector<PhraseScore> ScoreOracle(std::span<const GroundedNarrative> truth,
                                     const PanopticSource& panoptic,
                                     const CategoryIndex& categories,
                                     const std::string& proposals_dir,
                                     int workers) {
  return ScoreAll(truth, panoptic, workers,
                  [&](const GroundedNarrative& n, const PanopticImage& image,
                      std::vector<PhraseScore>& out) {
    const PanopticImage proposals = LoadProposals(proposals_dir, image);
    const std::vector<PhrasePrediction> assigned =
        OracleAssign(n, image, proposals);
    for (size_t i = 0; i < n.phrases.size(); ++i) {
      const PhrasePrediction* p = i < assigned.size() ? &assigned[i] : nullptr;
      out.push_back(MakeScore(n, i, image, categories,
                              PhraseIou(n.phrases[i], p, image, &proposals)));
    }
  });
}

}  // namespace panoground
