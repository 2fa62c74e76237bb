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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "brute_force.h"
#include "gtest/gtest.h"
#include "panoground/grounded_io.h"
#include "panoground/grounding_transfer.h"
#include "testing.h"

namespace panoground {
namespace {

using testing::MakeImage;
using testing::MakeNarrative;
using testing::ParseRaster;

// Category ids used by every fixture in this file.
constexpr int kPerson = 1, kCar = 3, kDog = 18, kTree = 184, kSky = 187;

const CategoryIndex& Categories() {
  static const CategoryIndex c = testing::MakeCategories(
      {{kPerson, "person", true},
       {kCar, "car", true},
       {kDog, "dog", true},
       {kTree, "tree-merged", false},
       {kSky, "sky-other-merged", false}});
  return c;
}

GroundingContext Context() {
  return GroundingContext{PosLexicon::Default(), testing::MiniWordNet(),
                          ManualTable::Default(), Categories()};
}

// Normalized coordinate of pixel column/row `p` out of `extent`. The small
// inset keeps the mean of up to 50 such points off pixel boundaries, so
// floor() is exact despite rounding.
double At(int p, int extent) { return (p + 0.01) / extent; }

const GroundedPhrase& Grounded(const PhraseOutcome& o) {
  return std::get<GroundedPhrase>(o);
}

TEST(CenterOfMassTest, Examples) {
  const TracePoint mid[] = {{0.5, 0.5, 0}};
  EXPECT_EQ(CenterOfMass(mid, 100, 100), (PixelPoint{50, 50}));
  const TracePoint corners[] = {{0, 0, 0}, {1, 1, 0}};
  EXPECT_EQ(CenterOfMass(corners, 100, 100), (PixelPoint{50, 50}));
  const TracePoint edge[] = {{1, 1, 0}};
  EXPECT_EQ(CenterOfMass(edge, 100, 80), (PixelPoint{99, 79}));

  std::vector<TracePoint> circle;
  double sx = 0, sy = 0;
  for (int i = 0; i < 10; ++i) {
    const double a = 2 * std::numbers::pi * i / 10;
    circle.push_back({0.3 + 0.05 * std::cos(a), 0.7 + 0.05 * std::sin(a), 0});
    sx += circle.back().x;
    sy += circle.back().y;
  }
  const PixelPoint c = CenterOfMass(circle, 200, 100);
  EXPECT_EQ(c.x, int(std::floor(sx / 10 * 200)));
  EXPECT_EQ(c.y, int(std::floor(sy / 10 * 100)));
  EXPECT_NEAR(c.x, 60, 1);
  EXPECT_NEAR(c.y, 70, 1);
}

TEST(GroundPhraseTest, CenterRegionAgrees) {
  const PanopticImage img = MakeImage(4, 4, ParseRaster({"1111", "1111", "2222", "2222"}),
                                      {{1, kSky}, {2, kTree}});
  const Narrative n = MakeNarrative("n", 1, {{"the", 0, 1}, {"sky", 1, 2}},
                                    {{At(1, 4), At(0, 4), 1.5}});
  const auto phrases = ExtractNounPhrases(n, PosLexicon::Default());
  ASSERT_EQ(phrases.size(), 1u);
  const GroundedPhrase& g = Grounded(GroundPhrase(n, phrases[0], img, Context()));
  EXPECT_EQ(g.segment_ids, (std::vector<SegmentId>{1}));
  EXPECT_EQ(g.match_rank, MatchRank::kExact);
  EXPECT_FALSE(g.via_vicinity);
}

TEST(GroundPhraseTest, TreeNextToVehicle) {
  // CoM on the tree (2); the car (3) is two pixels away.
  const PanopticImage img =
      MakeImage(8, 3, ParseRaster({"222.33..", "222.33..", "222.33.."}),
                {{2, kTree}, {3, kCar}});
  const Narrative n = MakeNarrative(
      "n", 1, {{"a", 0, 1}, {"red", 1, 2}, {"vehicle", 2, 3}},
      {{At(0, 8), At(1, 3), 1.5}, {At(1, 8), At(1, 3), 2.5}});
  const auto phrases = ExtractNounPhrases(n, PosLexicon::Default());
  ASSERT_EQ(phrases.size(), 1u);
  ASSERT_EQ(phrases[0].text, "red vehicle");
  const GroundedPhrase& g = Grounded(GroundPhrase(n, phrases[0], img, Context()));
  EXPECT_EQ(g.segment_ids, (std::vector<SegmentId>{3}));
  EXPECT_EQ(g.match_rank, MatchRank::kHierarchical);
  EXPECT_TRUE(g.via_vicinity);
  EXPECT_DOUBLE_EQ(g.vicinity_distance, 2.0);
}

TEST(GroundPhraseTest, VoidCenterPrefersNearestAgreeingRegion) {
  // CoM at (3,2) on void. Tree (2) is 3 px away, car (3) 5 px away.
  const PanopticImage img = MakeImage(
      8, 8,
      ParseRaster({"........", "........", "......2.", "........",
                   "........", "........", "........", "...3...."}),
      {{2, kTree}, {3, kCar}});
  const Narrative n = MakeNarrative("n", 1, {{"a", 0, 1}, {"car", 1, 2}},
                                    {{At(3, 8), At(2, 8), 1.5}});
  const auto phrases = ExtractNounPhrases(n, PosLexicon::Default());
  const PhraseOutcome o = GroundPhrase(n, phrases[0], img, Context());
  const GroundedPhrase& g = Grounded(o);
  EXPECT_EQ(g.com, (PixelPoint{3, 2}));
  EXPECT_EQ(g.segment_ids, (std::vector<SegmentId>{3}));
  EXPECT_DOUBLE_EQ(g.vicinity_distance, 5.0);
  EXPECT_DOUBLE_EQ(testing::BrutePointDistance(img, {3, 2}, 2), 3.0);
  EXPECT_DOUBLE_EQ(testing::BrutePointDistance(img, {3, 2}, 3), 5.0);

  // With a cap below the car's distance nothing qualifies.
  GroundingContext capped = Context();
  capped.max_vicinity_distance = 4.5;
  const auto u = std::get<UngroundedPhrase>(GroundPhrase(n, phrases[0], img, capped));
  EXPECT_EQ(u.reason, kReasonNoAgreement);
}

TEST(GroundPhraseTest, EqualDistanceTiesGoToSmallerId) {
  // Void center with cars 4 and 6 both two pixels away.
  const PanopticImage img = MakeImage(
      5, 5,
      ParseRaster({"..6..", ".....", "4...7", ".....", "....."}),
      {{4, kCar}, {6, kCar}, {7, kDog}});
  const Narrative n = MakeNarrative("n", 1, {{"car", 0, 1}},
                                    {{At(2, 5), At(2, 5), 0.5}});
  const auto p = ExtractNounPhrases(n, PosLexicon::Default());
  EXPECT_EQ(Grounded(GroundPhrase(n, p[0], img, Context())).segment_ids,
            (std::vector<SegmentId>{4}));
}

TEST(GroundPhraseTest, NoTracePointsInWindow) {
  const PanopticImage img = MakeImage(2, 2, ParseRaster({"11", "11"}), {{1, kSky}});
  const Narrative n = MakeNarrative("n", 1, {{"sky", 5, 6}}, {{0.5, 0.5, 1.0}});
  const auto p = ExtractNounPhrases(n, PosLexicon::Default());
  EXPECT_EQ(std::get<UngroundedPhrase>(GroundPhrase(n, p[0], img, Context())).reason,
            kReasonNoTrace);
}

TEST(ExpandPluralTest, ContainmentCases) {
  // Dogs 1 (seed), 2 and 3 inside the box, 4 outside, 5 straddling, 6 a
  // person inside.
  const PanopticImage img = MakeImage(
      10, 6,
      ParseRaster({"11.22....4", "11.22....4", "..........", "33.666..55",
                   "33.666..55", ".........."}),
      {{1, kDog}, {2, kDog}, {3, kDog}, {4, kDog}, {5, kDog}, {6, kPerson}});
  const std::vector<TracePoint> box = {{At(0, 10), At(0, 6), 0},
                                       {At(8, 10), At(4, 6), 0}};
  EXPECT_EQ(ExpandPlural(1, box, img), (std::vector<SegmentId>{1, 2, 3}));
  EXPECT_EQ(ExpandPlural(2, box, img), (std::vector<SegmentId>{2, 1, 3}));
  const PixelBox pb = TraceBoundingBox(box, 10, 6);
  EXPECT_EQ(testing::BrutePlural(img, 1, pb), ExpandPlural(1, box, img));
  // No same-category region in the box.
  EXPECT_EQ(ExpandPlural(6, box, img), (std::vector<SegmentId>{6}));
}

TEST(TransferNarrativeTest, MixedOutcomes) {
  const PanopticImage img =
      MakeImage(6, 2, ParseRaster({"111222", "111222"}), {{1, kSky}, {2, kTree}});
  // "sky" and "tree" ground, "banana" matches nothing, "road" has no trace.
  const Narrative n = MakeNarrative(
      "n", 1,
      {{"sky", 0, 1}, {"and", 1, 2}, {"tree", 2, 3}, {"and", 3, 4},
       {"banana", 4, 5}, {"or", 5, 6}, {"road", 9, 10}},
      {{At(1, 6), At(0, 2), 0.5}, {At(4, 6), At(0, 2), 2.5},
       {At(4, 6), At(1, 2), 4.5}});
  const GroundedNarrative g = TransferNarrative(n, img, Context());
  ASSERT_EQ(g.phrases.size(), 2u);
  EXPECT_EQ(g.phrases[0].segment_ids, (std::vector<SegmentId>{1}));
  EXPECT_EQ(g.phrases[1].segment_ids, (std::vector<SegmentId>{2}));
  ASSERT_EQ(g.ungrounded.size(), 2u);
  EXPECT_EQ(g.ungrounded[0].phrase.text, "banana");
  EXPECT_EQ(g.ungrounded[0].reason, kReasonNoAgreement);
  EXPECT_EQ(g.ungrounded[1].reason, kReasonNoTrace);
}

TEST(TransferNarrativeTest, NoPhrasesAndSharedRegions) {
  const PanopticImage img = MakeImage(2, 1, ParseRaster({"11"}), {{1, kSky}});
  const Narrative empty = MakeNarrative("e", 1, {{"the", 0, 1}, {"of", 1, 2}},
                                        {{0.5, 0.5, 0.5}});
  const GroundedNarrative ge = TransferNarrative(empty, img, Context());
  EXPECT_TRUE(ge.phrases.empty());
  EXPECT_TRUE(ge.ungrounded.empty());

  const Narrative twice = MakeNarrative(
      "t", 1, {{"sky", 0, 1}, {"and", 1, 2}, {"sky", 2, 3}},
      {{0.3, 0.5, 0.5}, {0.7, 0.5, 2.5}});
  const GroundedNarrative gt = TransferNarrative(twice, img, Context());
  ASSERT_EQ(gt.phrases.size(), 2u);
  EXPECT_EQ(gt.phrases[0].segment_ids, gt.phrases[1].segment_ids);
}

// Random image with rectangles of random categories over void.
struct Scene {
  PanopticImage image;
  Narrative narrative;
};

Scene RandomScene(std::mt19937& rng) {
  const int w = 6 + int(rng() % 20), h = 6 + int(rng() % 20);
  std::vector<SegmentId> ids(size_t(w) * h, 0);
  const int cats[] = {kPerson, kCar, kDog, kTree, kSky};
  std::map<SegmentId, int> category;
  const int rects = 1 + int(rng() % 7);
  for (int r = 0; r < rects; ++r) {
    const SegmentId id = SegmentId(r + 1);
    const int x0 = int(rng() % w), y0 = int(rng() % h);
    const int x1 = std::min(w - 1, x0 + int(rng() % 6));
    const int y1 = std::min(h - 1, y0 + int(rng() % 6));
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) ids[size_t(y) * w + x] = id;
    }
    category[id] = cats[rng() % 5];
  }
  // Drop ids fully overwritten by later rectangles.
  std::set<SegmentId> present(ids.begin(), ids.end());
  for (auto it = category.begin(); it != category.end();) {
    it = present.count(it->first) ? std::next(it) : category.erase(it);
  }
  if (category.empty()) {
    ids[0] = 1;
    category[1] = kSky;
  }

  static const std::vector<std::string> words = {
      "the", "a", "two", "red", "car", "cars", "vehicle", "dog", "dogs",
      "sky", "tree", "trees", "woman", "shirt", "wheel", "and", "banana"};
  std::vector<std::tuple<std::string, double, double>> timed;
  const int n = 3 + int(rng() % 10);
  for (int i = 0; i < n; ++i) {
    timed.emplace_back(words[rng() % words.size()], i, i + 0.8);
  }
  std::vector<TracePoint> trace;
  for (int i = 0; i < n; ++i) {
    for (int k = int(rng() % 3); k > 0; --k) {
      trace.push_back({At(int(rng() % w), w), At(int(rng() % h), h),
                       i + 0.1 + 0.3 * k});
    }
  }
  std::sort(trace.begin(), trace.end(),
            [](const TracePoint& a, const TracePoint& b) { return a.t < b.t; });
  return Scene{MakeImage(w, h, std::move(ids), category),
               MakeNarrative("r", 1, timed, trace)};
}

void ExpectSameGrounding(const PhraseOutcome& a, const PhraseOutcome& b) {
  ASSERT_EQ(a.index(), b.index());
  if (const auto* ga = std::get_if<GroundedPhrase>(&a)) {
    const auto& gb = std::get<GroundedPhrase>(b);
    EXPECT_EQ(ga->com, gb.com);
    EXPECT_EQ(ga->segment_ids, gb.segment_ids);
    EXPECT_EQ(ga->match_rank, gb.match_rank);
    EXPECT_EQ(ga->via_vicinity, gb.via_vicinity);
    EXPECT_EQ(ga->vicinity_distance, gb.vicinity_distance);
  } else {
    EXPECT_EQ(std::get<UngroundedPhrase>(a).reason,
              std::get<UngroundedPhrase>(b).reason);
  }
}

TEST(GroundingPropertyTest, MatchesBruteForceAndInvariants) {
  std::mt19937 rng(21);
  const GroundingContext ctx = Context();
  int grounded = 0, vicinity = 0, plural = 0;
  for (int iter = 0; iter < 400; ++iter) {
    const Scene s = RandomScene(rng);
    for (const NounPhrase& p :
         ExtractNounPhrases(s.narrative, PosLexicon::Default())) {
      const PhraseOutcome fast = GroundPhrase(s.narrative, p, s.image, ctx);
      const PhraseOutcome brute = testing::BruteGround(s.narrative, p, s.image, ctx);
      ExpectSameGrounding(fast, brute);
      const auto* g = std::get_if<GroundedPhrase>(&fast);
      if (g == nullptr) continue;
      ++grounded;
      vicinity += g->via_vicinity;
      plural += g->segment_ids.size() > 1;
      if (!g->via_vicinity) {
        EXPECT_EQ(s.image.id_at(g->com), g->segment_ids[0]);
      }
      if (!p.is_plural) EXPECT_EQ(g->segment_ids.size(), 1u);
      for (SegmentId id : g->segment_ids) {
        EXPECT_EQ(s.image.segment(id).category_id,
                  s.image.segment(g->segment_ids[0]).category_id);
      }
    }
  }
  // The generator must exercise every branch.
  EXPECT_GT(grounded, 100);
  EXPECT_GT(vicinity, 20);
  EXPECT_GT(plural, 5);
}

TEST(GroundingPropertyTest, TranslationEquivariance) {
  std::mt19937 rng(22);
  const GroundingContext ctx = Context();
  for (int iter = 0; iter < 200; ++iter) {
    const Scene s = RandomScene(rng);
    const int dx = int(rng() % 7), dy = int(rng() % 7);
    const int w = s.image.width(), h = s.image.height();
    const int W = w + dx + int(rng() % 4), H = h + dy + int(rng() % 4);
    std::vector<SegmentId> ids(size_t(W) * H, 0);
    std::map<SegmentId, int> cats;
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        ids[size_t(y + dy) * W + x + dx] = s.image.id_at(x, y);
      }
    }
    for (const SegmentRecord& r : s.image.segments()) cats[r.id] = r.category_id;
    const PanopticImage moved = MakeImage(W, H, std::move(ids), cats);
    Narrative n = s.narrative;
    for (auto& stroke : n.traces) {
      for (TracePoint& p : stroke) {
        // Recover the pixel and re-place it with the same inset.
        const int px = int(std::floor(p.x * w)), py = int(std::floor(p.y * h));
        p.x = At(px + dx, W);
        p.y = At(py + dy, H);
      }
    }
    for (const NounPhrase& p : ExtractNounPhrases(n, PosLexicon::Default())) {
      const PhraseOutcome a = GroundPhrase(s.narrative, p, s.image, ctx);
      const PhraseOutcome b = GroundPhrase(n, p, moved, ctx);
      ASSERT_EQ(a.index(), b.index());
      if (const auto* ga = std::get_if<GroundedPhrase>(&a)) {
        const auto& gb = std::get<GroundedPhrase>(b);
        EXPECT_EQ(gb.com, (PixelPoint{ga->com.x + dx, ga->com.y + dy}));
        EXPECT_EQ(ga->segment_ids, gb.segment_ids);
        EXPECT_EQ(ga->match_rank, gb.match_rank);
        EXPECT_EQ(ga->via_vicinity, gb.via_vicinity);
        EXPECT_DOUBLE_EQ(ga->vicinity_distance, gb.vicinity_distance);
      }
    }
  }
}

TEST(TransferDatasetTest, WorkerCountAndInputOrderDoNotMatter) {
  std::mt19937 rng(23);
  const std::string dir = testing::MakeTempDir("dataset");
  std::vector<PanopticAnnotation> annotations;
  std::vector<Narrative> narratives;
  for (int i = 0; i < 12; ++i) {
    Scene s = RandomScene(rng);
    // Re-key the scene onto its own image id.
    std::map<SegmentId, int> cats;
    for (const SegmentRecord& r : s.image.segments()) cats[r.id] = r.category_id;
    const PanopticImage img =
        MakeImage(s.image.width(), s.image.height(),
                  std::vector<SegmentId>(s.image.ids().begin(), s.image.ids().end()),
                  cats, 100 + i % 8);
    if (i < 8) annotations.push_back(testing::WriteRaster(dir, img));
    s.narrative.image_id = 100 + i % 8;
    s.narrative.narrative_id = "n" + std::to_string(i);
    narratives.push_back(s.narrative);
  }
  // One narrative on an image without annotation.
  narratives.push_back(MakeNarrative("orphan", 999, {{"sky", 0, 1}}, {{0.5, 0.5, 0.5}}));
  const PanopticSource source(annotations, dir);
  const GroundingContext ctx = Context();

  auto run = [&](std::vector<Narrative> input, int workers) {
    std::ostringstream out;
    const TransferResult r = TransferDataset(input, source, ctx, {workers, false});
    WriteGroundedAnnotations(out, r.grounded);
    std::string diags;
    for (const auto& d : r.diagnostics) diags += d + "\n";
    return std::make_pair(out.str(), diags);
  };
  const auto base = run(narratives, 1);
  EXPECT_NE(base.second.find("narrative orphan (image 999): skipped"),
            std::string::npos);
  for (int workers : {2, 4, 8}) EXPECT_EQ(run(narratives, workers), base);
  std::shuffle(narratives.begin(), narratives.end(), rng);
  EXPECT_EQ(run(narratives, 3).first, base.first);
}

}  // namespace
}  // namespace panoground
