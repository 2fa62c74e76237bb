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

// Acceptance suite. Prints one PASS/FAIL/SKIP line per criterion and exits
// nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <functional>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "brute_force.h"
#include "eval_fixture.h"
#include "panoground/commands.h"
#include "panoground/errors.h"
#include "panoground/evaluator.h"
#include "panoground/grounded_io.h"
#include "panoground/grounding_transfer.h"
#include "panoground/lexical_matcher.h"
#include "panoground/phrase_chunker.h"
#include "panoground/stats_reporter.h"
#include "testing.h"

namespace panoground {
namespace {

enum class Verdict { kPass, kFail, kSkip };

struct Outcome {
  Verdict verdict = Verdict::kPass;
  std::string detail;
};

// Collects failures; the first few messages land in the detail line.
class Checker {
 public:
  void Expect(bool ok, const std::string& what) {
    if (ok) return;
    if (++failures_ <= 3) {
      if (!messages_.empty()) messages_ += "; ";
      messages_ += what;
    }
  }
  Outcome Finish(std::string summary) const {
    if (failures_ == 0) return {Verdict::kPass, std::move(summary)};
    return {Verdict::kFail, std::to_string(failures_) + " failure(s): " +
                                messages_ + " | " + summary};
  }

 private:
  int failures_ = 0;
  std::string messages_;
};

std::string Fmt(const char* format, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

double ArOf(std::span<const double> ious, std::span<const double> grid) {
  return AverageRecall(ComputeRecallCurve(ious, grid));
}

std::vector<double> IousOf(std::span<const PhraseScore> scores) {
  std::vector<double> out;
  for (const PhraseScore& s : scores) out.push_back(s.iou);
  return out;
}

PredictionIndex PerfectPredictions(const testing::EvalFixture& f) {
  PredictionIndex out;
  for (size_t n = 0; n < f.truth.size(); ++n) {
    const GroundedNarrative& g = f.truth[n];
    for (size_t i = 0; i < g.phrases.size(); ++i) {
      out[{g.narrative_id, int(i)}] = PhrasePrediction{
          .narrative_id = g.narrative_id,
          .phrase_index = int(i),
          .masks = {MaskOf(f.images[n], g.phrases[i].segment_ids).ToRle()}};
    }
  }
  return out;
}

// Phrase k keeps the first 1 + (k mod 40) pixels of its 40-pixel band, so
// IoUs step through every multiple of 1/40.
PredictionIndex GradedPredictions(const testing::EvalFixture& f) {
  PredictionIndex out;
  int k = 0;
  for (size_t n = 0; n < f.truth.size(); ++n) {
    const GroundedNarrative& g = f.truth[n];
    const PanopticImage& img = f.images[n];
    for (size_t i = 0; i < g.phrases.size(); ++i, ++k) {
      const BinaryMask truth = MaskOf(img, g.phrases[i].segment_ids);
      BinaryMask keep(img.width(), img.height());
      int left = 1 + k % 40;
      for (int x = 0; x < img.width() && left > 0; ++x) {
        for (int y = 0; y < img.height() && left > 0; ++y) {
          if (truth.Get(x, y)) {
            keep.Set(x, y);
            --left;
          }
        }
      }
      out[{g.narrative_id, int(i)}] = PhrasePrediction{
          .narrative_id = g.narrative_id, .phrase_index = int(i), .masks = {keep}};
    }
  }
  return out;
}

Outcome MetricExactness() {
  Checker c;
  const auto f = testing::BuildEvalFixture(testing::MakeTempDir("acc_metric"), false);
  c.Expect(f.phrase_count() == 50, "fixture has " + std::to_string(f.phrase_count()) + " phrases");
  const auto perfect = ScorePredictions(f.truth, f.source, f.categories,
                                        PerfectPredictions(f), "", 1);
  const auto empty = ScorePredictions(f.truth, f.source, f.categories, {}, "", 1);
  const double ar_perfect = Disaggregate(perfect, ThresholdGrid()).overall.average_recall;
  const double ar_empty = Disaggregate(empty, ThresholdGrid()).overall.average_recall;
  c.Expect(ar_perfect == 1.0, Fmt("AR(perfect) = %.17g", ar_perfect));
  c.Expect(ar_empty == 0.0, Fmt("AR(empty) = %.17g", ar_empty));

  // One phrase whose prediction covers half of its 4x2 segment.
  const PanopticImage img = testing::MakeImage(4, 2, testing::ParseRaster({"1111", "1111"}));
  GroundedPhrase truth;
  truth.segment_ids = {1};
  BinaryMask half(4, 2);
  for (int x = 0; x < 4; ++x) half.Set(x, 0);
  const PhrasePrediction pred{.masks = {half.ToRle()}};
  const double iou = PhraseIou(truth, &pred, img, nullptr);
  const double ar_half = ArOf(std::vector<double>{iou}, ThresholdGrid());
  c.Expect(iou == 0.5, Fmt("IoU = %.17g", iou));
  c.Expect(ar_half == 0.5, Fmt("AR(single 0.50) = %.17g", ar_half));
  return c.Finish(Fmt("AR perfect %.4f, empty %.4f, single %.4f", ar_perfect,
                      ar_empty, ar_half));
}

Outcome IouEquivalence() {
  Checker c;
  std::mt19937 rng(20260614);
  int identical = 0;
  for (int i = 0; i < 1000; ++i) {
    const int w = 1 + int(rng() % 64), h = 1 + int(rng() % 64);
    const BinaryMask a = testing::RandomMask(rng, w, h);
    const BinaryMask b = testing::RandomMask(rng, w, h);
    const double rle = IouRle(a.ToRle(), b.ToRle());
    const double dense = IouDense(a, b);
    const uint64_t inter = testing::BruteIntersection(a, b);
    const uint64_t uni = testing::BruteUnion(a, b);
    const double brute = uni == 0 ? 0.0 : double(inter) / double(uni);
    c.Expect(rle == dense, "pair " + std::to_string(i) + " rle != dense");
    c.Expect(dense == brute, "pair " + std::to_string(i) + " dense != pixel scan");
    identical += rle == dense && dense == brute;
  }
  return c.Finish(std::to_string(identical) + "/1000 pairs identical");
}

Outcome OracleAssignment() {
  Checker c;
  const auto f = testing::BuildEvalFixture(testing::MakeTempDir("acc_oracle"), false);
  const std::string dir =
      testing::WriteProposals(f, testing::ProposalMode::kEroded, "eroded");
  const auto scores = ScoreOracle(f.truth, f.source, f.categories, dir, 4);
  const double ar = Disaggregate(scores, ThresholdGrid()).overall.average_recall;
  c.Expect(std::abs(ar - 0.50) <= 0.01, Fmt("oracle AR = %.6f", ar));
  int agree = 0, total = 0;
  for (size_t n = 0; n < f.truth.size(); ++n) {
    const PanopticImage proposals = LoadProposals(dir, f.images[n]);
    const auto assigned = OracleAssign(f.truth[n], f.images[n], proposals);
    for (size_t i = 0; i < f.truth[n].phrases.size(); ++i, ++total) {
      const auto brute = testing::BruteBestProposal(
          MaskOf(f.images[n], f.truth[n].phrases[i].segment_ids), proposals);
      const bool same = brute.has_value() && assigned[i].proposal_segment_ids.size() == 1 &&
                        assigned[i].proposal_segment_ids[0] == *brute;
      c.Expect(same, f.truth[n].narrative_id + "#" + std::to_string(i) +
                         " differs from brute force");
      agree += same;
    }
  }
  return c.Finish(Fmt("oracle AR %.4f, ", ar) + std::to_string(agree) + "/" +
                  std::to_string(total) + " selections equal brute force");
}

Outcome TransferGolden() {
  Checker c;
  const std::string fixture = std::string(testing::kFixtureDir) + "/transfer10";
  const std::string golden = ReadFileToString(fixture + "/golden.jsonl");
  const std::string golden_diag = ReadFileToString(fixture + "/golden.diagnostics.txt");
  for (int workers : {1, 4, 8}) {
    Config cfg = LoadConfigFile(fixture + "/config.txt");
    cfg.workers = workers;
    cfg.out = testing::MakeTempDir("acc_golden") + "/grounded.jsonl";
    RunTransfer(cfg);
    c.Expect(ReadFileToString(cfg.out) == golden,
             std::to_string(workers) + " workers: output differs from golden");
    c.Expect(ReadFileToString(cfg.diagnostics.empty() ? cfg.out + ".diagnostics.txt"
                                                      : cfg.diagnostics) == golden_diag,
             std::to_string(workers) + " workers: diagnostics differ");
  }

  const Config cfg = LoadConfigFile(fixture + "/config.txt");
  const WordNet wordnet = WordNet::LoadDirectory(cfg.wordnet_dir);
  const ManualTable manual = ManualTable::Load(cfg.manual_table);
  const CategoryIndex categories = LoadCategoryIndex(cfg.panoptic_json);
  const PanopticSource source = PanopticSource::Load(cfg.panoptic_json, cfg.panoptic_dir);
  const GroundingContext ctx{PosLexicon::Default(), wordnet, manual, categories};
  int vicinity = 0, plural = 0;
  for (const Narrative& n : LoadNarratives(cfg.narratives, true, nullptr)) {
    if (source.Find(n.image_id) == nullptr) continue;
    const PanopticImage img = source.LoadImage(n.image_id);
    for (const NounPhrase& p : ExtractNounPhrases(n, ctx.pos_lexicon)) {
      const PhraseOutcome fast = GroundPhrase(n, p, img, ctx);
      const PhraseOutcome brute = testing::BruteGround(n, p, img, ctx);
      const std::string where = n.narrative_id + " \"" + p.text + "\"";
      c.Expect(fast.index() == brute.index(), where + ": grounded differently");
      const auto* g = std::get_if<GroundedPhrase>(&fast);
      const auto* b = std::get_if<GroundedPhrase>(&brute);
      if (g == nullptr || b == nullptr) continue;
      if (g->via_vicinity || b->via_vicinity) {
        ++vicinity;
        c.Expect(g->via_vicinity == b->via_vicinity &&
                     g->segment_ids.front() == b->segment_ids.front() &&
                     g->vicinity_distance == b->vicinity_distance,
                 where + ": vicinity pick differs from ranking scan");
      }
      if (p.is_plural) {
        ++plural;
        const auto points = PointsInWindow(n, PhraseTimeWindow(n, p.first_token, p.last_token));
        const PixelBox box = TraceBoundingBox(points, img.width(), img.height());
        c.Expect(g->segment_ids == testing::BrutePlural(img, g->segment_ids.front(), box),
                 where + ": plural set differs from containment scan");
      }
      c.Expect(g->segment_ids == b->segment_ids, where + ": segments differ");
    }
  }
  return c.Finish("byte-identical at 1/4/8 workers; " + std::to_string(vicinity) +
                  " vicinity and " + std::to_string(plural) +
                  " plural selections checked by brute force");
}

NounPhrase OnlyPhrase(const std::string& caption) {
  std::vector<std::string> words;
  for (const ChunkWord& w : NormalizeText(caption)) words.push_back(w.text);
  auto phrases = ChunkNounPhrases(TagTokens(words, PosLexicon::Default()));
  if (phrases.size() != 1) {
    throw InvalidArgumentError("expected one phrase in \"" + caption + "\"");
  }
  return phrases[0];
}

// Timed separately from the index load, which the criterion excludes.
Outcome SemanticAnchors(double& seconds) {
  const WordNet* wn = testing::RealWordNet();
  if (wn == nullptr) {
    return {Verdict::kSkip, std::string("WordNet 3.0 not found under ") + testing::kWordNetDir};
  }
  const auto start = std::chrono::steady_clock::now();
  Checker c;
  auto rank = [&](const std::string& caption, const std::string& category) {
    return RankMatch(OnlyPhrase(caption), CategoryRecord{1, category, true}, *wn,
                     ManualTable::Default());
  };
  const auto red_car = rank("a red vehicle", "car");
  const auto red_tree = rank("a red vehicle", "tree");
  const auto sky = rank("the sky", "sky");
  c.Expect(red_car == MatchRank::kHierarchical,
           "(red vehicle, car) -> " +
               std::string(red_car ? MatchRankName(*red_car) : "none"));
  c.Expect(!red_tree.has_value(), "(red vehicle, tree) accepted");
  c.Expect(sky == MatchRank::kExact, "(sky, sky) not exact");
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return c.Finish(std::to_string(wn->synset_count()) +
                  " synsets; car hierarchical, tree rejected, sky exact");
}

Outcome CurveMonotonicityAndGridStability() {
  Checker c;
  std::vector<std::pair<std::string, std::vector<double>>> suites;

  const auto f = testing::BuildEvalFixture(testing::MakeTempDir("acc_grid"), false);
  const auto fp = testing::BuildEvalFixture(testing::MakeTempDir("acc_grid_pl"), true);
  suites.emplace_back("perfect", IousOf(ScorePredictions(
                                     f.truth, f.source, f.categories,
                                     PerfectPredictions(f), "", 1)));
  suites.emplace_back("empty", IousOf(ScorePredictions(f.truth, f.source,
                                                       f.categories, {}, "", 1)));
  suites.emplace_back("graded", IousOf(ScorePredictions(
                                    f.truth, f.source, f.categories,
                                    GradedPredictions(f), "", 1)));
  for (const auto* fx : {&f, &fp}) {
    for (auto mode : {testing::ProposalMode::kIdentical, testing::ProposalMode::kEroded}) {
      const bool eroded = mode == testing::ProposalMode::kEroded;
      const std::string dir = testing::WriteProposals(*fx, mode, eroded ? "e" : "i");
      suites.emplace_back(std::string(fx == &fp ? "plural-" : "") +
                              (eroded ? "oracle-eroded" : "oracle-identical"),
                          IousOf(ScoreOracle(fx->truth, fx->source,
                                             fx->categories, dir, 2)));
    }
  }
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> uniform(1000);
  for (double& v : uniform) v = unit(rng);
  suites.emplace_back("uniform-1000", uniform);

  double worst = 0;
  std::string worst_name;
  for (const auto& [name, ious] : suites) {
    for (int points : {100, 1000}) {
      const RecallCurve curve = ComputeRecallCurve(ious, ThresholdGrid(points));
      for (size_t i = 1; i < curve.recall.size(); ++i) {
        c.Expect(curve.recall[i] <= curve.recall[i - 1],
                 name + ": curve rises at threshold " + std::to_string(curve.thresholds[i]));
      }
    }
    const double diff = std::abs(ArOf(ious, ThresholdGrid(100)) - ArOf(ious, ThresholdGrid(1000)));
    c.Expect(diff < 0.005, name + Fmt(": |AR100 - AR1000| = %.5f", diff));
    if (diff >= worst) {
      worst = diff;
      worst_name = name;
    }
  }
  return c.Finish(std::to_string(suites.size()) + " suites monotone; largest grid difference " +
                  Fmt("%.5f", worst) + " (" + worst_name + ")");
}

// Runs only when PANOGROUND_FULL_CONFIG names a config file covering the
// complete COCO panoptic and Localized Narratives inputs.
Outcome FullData() {
  const char* path = std::getenv("PANOGROUND_FULL_CONFIG");
  if (path == nullptr || *path == '\0') {
    return {Verdict::kSkip, "set PANOGROUND_FULL_CONFIG to run on the full corpora"};
  }
  Config cfg = LoadConfigFile(path);
  if (cfg.out.empty()) cfg.out = testing::MakeTempDir("acc_full") + "/grounded.jsonl";
  if (cfg.workers == 1) cfg.workers = 8;
  RunTransfer(cfg);
  cfg.grounded = cfg.out;
  cfg.out.clear();
  const StatsReport r = RunStats(cfg);
  Checker c;
  c.Expect(std::abs(r.phrases_per_narrative_matched - 5.1) <= 0.5,
           Fmt("phrases per narrative %.3f", r.phrases_per_narrative_matched));
  c.Expect(std::abs(r.things_fraction - 0.570) <= 0.03, Fmt("things %.3f", r.things_fraction));
  c.Expect(std::abs(r.plural_fraction - 0.293) <= 0.03, Fmt("plural %.3f", r.plural_fraction));
  c.Expect(std::abs(r.vicinity_fraction - 0.446) <= 0.05,
           Fmt("vicinity %.3f", r.vicinity_fraction));
  return c.Finish(Fmt("phrases/narrative %.2f, things %.3f, plural %.3f",
                      r.phrases_per_narrative_matched, r.things_fraction,
                      r.plural_fraction) +
                  Fmt(", vicinity %.3f", r.vicinity_fraction));
}

struct Criterion {
  const char* name;
  double budget_seconds;  // <= 0: no runtime bound
  std::function<Outcome(double&)> run;  // may overwrite the measured time
};

}  // namespace
}  // namespace panoground

int main() {
  using namespace panoground;
  auto plain = [](Outcome (*fn)()) {
    return [fn](double&) { return fn(); };
  };
  const std::vector<Criterion> criteria = {
      {"metric-exactness", 1.0, plain(MetricExactness)},
      {"iou-oracle-equivalence", 5.0, plain(IouEquivalence)},
      {"oracle-assignment", 5.0, plain(OracleAssignment)},
      {"transfer-golden", 10.0, plain(TransferGolden)},
      {"semantic-anchors", 5.0, SemanticAnchors},
      {"curve-monotonicity-grid-stability", 0, plain(CurveMonotonicityAndGridStability)},
      {"full-data-statistics", 0, plain(FullData)},
  };
  int failed = 0;
  for (const Criterion& k : criteria) {
    const auto start = std::chrono::steady_clock::now();
    double seconds = -1;
    Outcome o;
    try {
      o = k.run(seconds);
    } catch (const std::exception& e) {
      o = {Verdict::kFail, std::string("exception: ") + e.what()};
    }
    if (seconds < 0) {
      seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    if (o.verdict == Verdict::kPass && k.budget_seconds > 0 && seconds >= k.budget_seconds) {
      o.verdict = Verdict::kFail;
      o.detail += Fmt(" | runtime %.3fs exceeds %.0fs", seconds, k.budget_seconds);
    }
    const char* tag = o.verdict == Verdict::kPass   ? "PASS"
                      : o.verdict == Verdict::kFail ? "FAIL"
                                                    : "SKIP";
    std::printf("%s %s (%.3fs) %s\n", tag, k.name, seconds, o.detail.c_str());
    failed += o.verdict == Verdict::kFail;
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
