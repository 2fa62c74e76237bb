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

// Average Recall over IoU thresholds for panoptic narrative grounding.
//
// Every ground-truth phrase contributes one IoU between the union of its
// segments and the union of the predicted masks (plural phrases are never
// matched instance by instance). Missing predictions score 0. recall(t) is the
// fraction of phrases with IoU >= t and Average Recall is the mean of recall
// over the threshold grid, by default {0.01, 0.02, ..., 1.00}.

#ifndef PANOGROUND_EVALUATOR_H_
#define PANOGROUND_EVALUATOR_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "panoground/grounding_transfer.h"
#include "panoground/mask.h"
#include "panoground/panoptic_source.h"

namespace panoground {

struct PhrasePrediction {
  std::string narrative_id;
  int phrase_index = 0;
  std::vector<BinaryMask> masks;
  // Ids into the proposal raster of the same image.
  std::vector<SegmentId> proposal_segment_ids;
};

using PredictionKey = std::pair<std::string, int>;
using PredictionIndex = std::map<PredictionKey, PhrasePrediction>;

PhrasePrediction ParsePredictionLine(std::string_view line,
                                     const std::string& where);
// Later lines for the same (narrative, phrase) replace earlier ones.
PredictionIndex LoadPredictions(const std::string& path);

// {1/points, 2/points, ..., 1}.
std::vector<double> ThresholdGrid(int points = 100);

struct RecallCurve {
  std::vector<double> thresholds;
  std::vector<double> recall;
};

// Throws InvalidArgumentError for an empty IoU list or a grid that is not
// strictly ascending inside (0, 1].
RecallCurve ComputeRecallCurve(std::span<const double> ious,
                               std::span<const double> thresholds);
double AverageRecall(const RecallCurve& curve);

// IoU of the phrase's aggregated ground truth against the prediction. A null
// prediction, or one without masks and ids, scores 0. `proposals` is needed
// only for predictions that reference proposal segment ids.
double PhraseIou(const GroundedPhrase& truth, const PhrasePrediction* prediction,
                 const PanopticImage& image, const PanopticImage* proposals);

// Best single proposal per phrase (ties -> smaller id). Phrases get no
// prediction when the proposal raster has no segments.
std::vector<PhrasePrediction> OracleAssign(const GroundedNarrative& truth,
                                           const PanopticImage& image,
                                           const PanopticImage& proposals);

struct PhraseScore {
  std::string narrative_id;
  int phrase_index = 0;
  std::string text;
  bool is_thing = false;
  bool is_plural = false;
  double iou = 0;
};

struct SubsetReport {
  size_t phrases = 0;
  RecallCurve curve;
  double average_recall = 0;
};

struct ArReport {
  std::vector<double> thresholds;
  SubsetReport overall;
  std::optional<SubsetReport> things;
  std::optional<SubsetReport> stuff;
  std::optional<SubsetReport> singular;
  std::optional<SubsetReport> plural;
  std::vector<PhraseScore> per_phrase;
};

// Each subset is scored on its own phrases only; empty subsets are absent.
ArReport Disaggregate(std::span<const PhraseScore> scores,
                      std::span<const double> thresholds);

nlohmann::ordered_json ReportToJson(const ArReport& report);

// Whether a phrase's ground truth is a thing, from its first segment.
bool IsThingPhrase(const GroundedPhrase& phrase, const PanopticImage& image,
                   const CategoryIndex& categories);

// Proposal raster for `truth_image`: <proposals_dir>/<file_name>.
PanopticImage LoadProposals(const std::string& proposals_dir,
                            const PanopticImage& truth_image);

// Scores every ground-truth phrase against `predictions`. `proposals_dir`
// may be empty when no prediction references proposal ids.
std::vector<PhraseScore> ScorePredictions(
    std::span<const GroundedNarrative> truth, const PanopticSource& panoptic,
    const CategoryIndex& categories, const PredictionIndex& predictions,
    const std::string& proposals_dir, int workers);

// Scores every phrase with its oracle-assigned proposal.
std::vector<PhraseScore> ScoreOracle(std::span<const GroundedNarrative> truth,
                                     const PanopticSource& panoptic,
                                     const CategoryIndex& categories,
                                     const std::string& proposals_dir,
                                     int workers);

}  // namespace panoground

#endif  // PANOGROUND_EVALUATOR_H_
