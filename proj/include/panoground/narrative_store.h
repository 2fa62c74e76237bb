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

// Localized-Narratives style records: a caption with timed utterances and a
// mouse trace split into strokes of timestamped points.

#ifndef PANOGROUND_NARRATIVE_STORE_H_
#define PANOGROUND_NARRATIVE_STORE_H_

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace panoground {

// One whitespace-delimited word of the caption. When a timed utterance holds
// several words each of them inherits the utterance's interval.
struct TimedToken {
  std::string text;
  double start = 0;
  double end = 0;
  int utterance = 0;
};

// Normalized image coordinates in [0, 1], time in seconds.
struct TracePoint {
  double x = 0;
  double y = 0;
  double t = 0;
};

struct Narrative {
  std::string narrative_id;
  int64_t image_id = 0;
  std::string caption;
  std::vector<TimedToken> tokens;
  std::vector<std::vector<TracePoint>> traces;
  // Set when at least one timed unit spans several words.
  bool utterance_level_timing = false;
};

// Parses one json line. Throws ParseError (location = `where`).
Narrative ParseNarrative(std::string_view line, const std::string& where);

struct LoadDiagnostic {
  int line = 0;
  std::string message;
};

// Sequential line-delimited reader. Malformed lines become diagnostics unless
// `strict`, in which case Next() throws the ParseError.
class NarrativeReader {
 public:
  NarrativeReader(std::istream& in, std::string source, bool strict);

  std::optional<Narrative> Next();
  const std::vector<LoadDiagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::istream& in_;
  std::string source_;
  bool strict_;
  int line_number_ = 0;
  std::vector<LoadDiagnostic> diagnostics_;
};

std::vector<Narrative> LoadNarratives(const std::string& path, bool strict,
                                      std::vector<LoadDiagnostic>* diagnostics);

struct TimeWindow {
  double start = 0;
  double end = 0;
};

// Interval from the start of token `first` to the end of token `last`
// (inclusive indices). Throws InvalidArgumentError on an empty or
// out-of-range span.
TimeWindow PhraseTimeWindow(const Narrative& narrative, int first, int last);

// Every trace point with start <= t <= end, in temporal order across strokes.
std::vector<TracePoint> PointsInWindow(const Narrative& narrative,
                                       TimeWindow window);

}  // namespace panoground

#endif  // PANOGROUND_NARRATIVE_STORE_H_
