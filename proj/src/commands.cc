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

#include "panoground/commands.h"

#include <fstream>
#include <optional>

#include "panoground/errors.h"
#include "panoground/grounded_io.h"
#include "panoground/grounding_transfer.h"
#include "panoground/lexical_matcher.h"
#include "panoground/narrative_store.h"
#include "panoground/panoptic_source.h"
#include "panoground/phrase_chunker.h"
#include "panoground/render.h"

namespace panoground {

namespace {

std::ofstream OpenOutput(const std::string& path) {
  if (path.empty()) throw InvalidArgumentError("missing required setting: out");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  return out;
}

void WriteJson(const std::string& path, const nlohmann::ordered_json& j) {
  std::ofstream out = OpenOutput(path);
  out << j.dump(2) << "\n";
  if (!out) throw IoError("write failed: " + path);
}

const std::string& CategoryPath(const Config& c) {
  return c.categories.empty() ? c.panoptic_json : c.categories;
}

std::vector<double> Thresholds(const Config& c) {
  return c.thresholds.empty() ? ThresholdGrid() : c.thresholds;
}

std::vector<Narrative> ReadNarratives(const Config& c,
                                      std::vector<std::string>* diagnostics) {
  std::vector<LoadDiagnostic> diags;
  std::vector<Narrative> narratives =
      LoadNarratives(c.narratives, c.strict, &diags);
  if (diagnostics != nullptr) {
    for (const LoadDiagnostic& d : diags) {
      diagnostics->push_back(c.narratives + ":" + std::to_string(d.line) +
                             ": " + d.message);
    }
  }
  return narratives;
}

// Lexical resources shared by transfer and render.
struct Resources {
  PosLexicon lexicon;
  WordNet wordnet;
  std::optional<ManualTable> manual_file;
  CategoryIndex categories;

  const ManualTable& manual() const {
    return manual_file ? *manual_file : ManualTable::Default();
  }
};

Resources LoadResources(const Config& c) {
  RequireExisting("wordnet_dir", c.wordnet_dir);
  RequireExisting("categories", CategoryPath(c));
  if (!c.manual_table.empty()) RequireExisting("manual_table", c.manual_table);
  if (!c.lexicon.empty()) RequireExisting("lexicon", c.lexicon);
  Resources r{
      .lexicon = c.lexicon.empty() ? PosLexicon::Default()
                                   : PosLexicon::LoadWithDefaults(c.lexicon),
      .wordnet = WordNet::LoadDirectory(c.wordnet_dir),
      .manual_file = std::nullopt,
      .categories = LoadCategoryIndex(CategoryPath(c)),
  };
  if (!c.manual_table.empty()) r.manual_file = ManualTable::Load(c.manual_table);
  r.manual().Validate(r.categories);
  return r;
}

void RequirePanoptic(const Config& c) {
  RequireExisting("panoptic_json", c.panoptic_json);
  RequireExisting("panoptic_dir", c.panoptic_dir);
}

ArReport Finish(const Config& c, const std::vector<PhraseScore>& scores) {
  ArReport report = Disaggregate(scores, Thresholds(c));
  WriteJson(c.out, ReportToJson(report));
  return report;
}

}  // namespace

TransferSummary RunTransfer(const Config& c) {
  RequireExisting("narratives", c.narratives);
  RequirePanoptic(c);
  if (c.out.empty()) throw InvalidArgumentError("missing required setting: out");
  const Resources r = LoadResources(c);
  const PanopticSource panoptic =
      PanopticSource::Load(c.panoptic_json, c.panoptic_dir);

  std::vector<std::string> diagnostics;
  const std::vector<Narrative> narratives = ReadNarratives(c, &diagnostics);
  const GroundingContext context{r.lexicon, r.wordnet, r.manual(),
                                 r.categories, c.max_vicinity_distance};
  TransferResult result = TransferDataset(
      narratives, panoptic, context,
      TransferOptions{.workers = c.workers, .strict = c.strict});
  for (std::string& d : result.diagnostics) diagnostics.push_back(std::move(d));

  {
    std::ofstream out = OpenOutput(c.out);
    WriteGroundedAnnotations(out, result.grounded);
    if (!out) throw IoError("write failed: " + c.out);
  }
  const std::string diag_path =
      c.diagnostics.empty() ? c.out + ".diagnostics.txt" : c.diagnostics;
  std::ofstream diag = OpenOutput(diag_path);
  for (const std::string& d : diagnostics) diag << d << "\n";
  if (!diag) throw IoError("write failed: " + diag_path);

  return TransferSummary{.narratives = narratives.size(),
                         .grounded = result.grounded.size(),
                         .diagnostics = diagnostics.size()};
}

ArReport RunEvaluate(const Config& c) {
  RequireExisting("grounded", c.grounded);
  RequireExisting("predictions", c.predictions);
  RequirePanoptic(c);
  RequireExisting("categories", CategoryPath(c));
  if (!c.proposals_dir.empty()) RequireExisting("proposals_dir", c.proposals_dir);
  const CategoryIndex categories = LoadCategoryIndex(CategoryPath(c));
  const PanopticSource panoptic =
      PanopticSource::Load(c.panoptic_json, c.panoptic_dir);
  const std::vector<GroundedNarrative> truth =
      LoadGroundedAnnotations(c.grounded);
  const PredictionIndex predictions = LoadPredictions(c.predictions);
  return Finish(c, ScorePredictions(truth, panoptic, categories, predictions,
                                    c.proposals_dir, c.workers));
}

ArReport RunOracle(const Config& c) {
  RequireExisting("grounded", c.grounded);
  RequireExisting("proposals_dir", c.proposals_dir);
  RequirePanoptic(c);
  RequireExisting("categories", CategoryPath(c));
  const CategoryIndex categories = LoadCategoryIndex(CategoryPath(c));
  const PanopticSource panoptic =
      PanopticSource::Load(c.panoptic_json, c.panoptic_dir);
  const std::vector<GroundedNarrative> truth =
      LoadGroundedAnnotations(c.grounded);
  return Finish(c, ScoreOracle(truth, panoptic, categories, c.proposals_dir,
                               c.workers));
}

StatsReport RunStats(const Config& c) {
  RequireExisting("grounded", c.grounded);
  RequireExisting("narratives", c.narratives);
  RequirePanoptic(c);
  RequireExisting("categories", CategoryPath(c));
  if (!c.lexicon.empty()) RequireExisting("lexicon", c.lexicon);
  const CategoryIndex categories = LoadCategoryIndex(CategoryPath(c));
  const PosLexicon lexicon = c.lexicon.empty()
                                 ? PosLexicon::Default()
                                 : PosLexicon::LoadWithDefaults(c.lexicon);
  const PanopticSource panoptic =
      PanopticSource::Load(c.panoptic_json, c.panoptic_dir);
  const std::vector<GroundedNarrative> grounded =
      LoadGroundedAnnotations(c.grounded);
  const std::vector<Narrative> narratives = ReadNarratives(c, nullptr);
  StatsReport report = ComputeStats(grounded, narratives, panoptic, categories,
                                    lexicon, c.workers);
  if (!c.out.empty()) WriteJson(c.out, StatsToJson(report));
  return report;
}

void RunRender(const Config& c) {
  if (c.narrative_id.empty()) {
    throw InvalidArgumentError("missing required setting: narrative_id");
  }
  RequireExisting("narratives", c.narratives);
  RequirePanoptic(c);
  if (!c.base_image.empty()) RequireExisting("base_image", c.base_image);
  const PanopticSource panoptic =
      PanopticSource::Load(c.panoptic_json, c.panoptic_dir);

  std::optional<Narrative> narrative;
  for (Narrative& n : ReadNarratives(c, nullptr)) {
    if (n.narrative_id == c.narrative_id) {
      narrative = std::move(n);
      break;
    }
  }
  if (!narrative) {
    throw NotFoundError("narrative not found: " + c.narrative_id);
  }
  const PanopticImage image = panoptic.LoadImage(narrative->image_id);

  // Grounding comes from a grounded file when given, otherwise it is
  // recomputed for this one narrative.
  std::optional<GroundedNarrative> grounded;
  if (!c.grounded.empty()) {
    RequireExisting("grounded", c.grounded);
    for (GroundedNarrative& g : LoadGroundedAnnotations(c.grounded)) {
      if (g.narrative_id == c.narrative_id) {
        grounded = std::move(g);
        break;
      }
    }
  } else {
    const Resources r = LoadResources(c);
    const GroundingContext context{r.lexicon, r.wordnet, r.manual(),
                                   r.categories, c.max_vicinity_distance};
    GroundedNarrative g = TransferNarrative(*narrative, image, context);
    if (!g.phrases.empty()) grounded = std::move(g);
  }

  std::optional<RgbImage> base;
  if (!c.base_image.empty()) base = ReadPng(c.base_image);
  const RgbImage overlay =
      RenderOverlay(*narrative, grounded ? &*grounded : nullptr, image,
                    base ? &*base : nullptr);
  const std::string out =
      c.out.empty() ? c.narrative_id + ".png" : c.out;
  WritePng(out, overlay);
}

}  // namespace panoground
