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

#include "panoground/narrative_store.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "panoground/errors.h"

namespace panoground {

namespace {

using nlohmann::json;

int64_t ReadImageId(const json& v) {
  if (v.is_number_integer()) return v.get<int64_t>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    size_t used = 0;
    const long long id = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument("image_id " + s);
    return id;
  }
  throw std::invalid_argument("image_id must be an integer or numeric string");
}

std::string ReadNarrativeId(const json& record, int64_t image_id) {
  if (record.contains("narrative_id")) {
    const json& v = record["narrative_id"];
    return v.is_string() ? v.get<std::string>() : v.dump();
  }
  // Raw Localized Narratives carry no narrative id; image and annotator
  // identify a record uniquely.
  if (record.contains("annotator_id")) {
    const json& a = record["annotator_id"];
    return std::to_string(image_id) + "_" +
           (a.is_string() ? a.get<std::string>() : a.dump());
  }
  throw std::invalid_argument("missing narrative_id");
}

double Clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

Narrative ParseNarrative(std::string_view line, const std::string& where) {
  json record;
  try {
    record = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(where + " offset " + std::to_string(e.byte), e.what());
  }
  Narrative n;
  try {
    if (!record.is_object()) throw std::invalid_argument("record is not an object");
    n.image_id = ReadImageId(record.at("image_id"));
    n.narrative_id = ReadNarrativeId(record, n.image_id);

    const json& timed = record.at("timed_caption");
    std::vector<std::string> utterances;
    for (size_t u = 0; u < timed.size(); ++u) {
      const json& unit = timed[u];
      const std::string text = unit.at("utterance").get<std::string>();
      const double start = unit.at("start_time").get<double>();
      const double end = unit.at("end_time").get<double>();
      if (!std::isfinite(start) || !std::isfinite(end) || start > end) {
        throw std::invalid_argument("utterance " + std::to_string(u) +
                                    " has an invalid interval");
      }
      std::istringstream words(text);
      std::string word;
      int count = 0;
      while (words >> word) {
        n.tokens.push_back({word, start, end, static_cast<int>(u)});
        ++count;
      }
      if (count > 1) n.utterance_level_timing = true;
      utterances.push_back(text);
    }
    for (size_t i = 1; i < n.tokens.size(); ++i) {
      if (n.tokens[i].start < n.tokens[i - 1].start) {
        throw std::invalid_argument("token start times decrease at token " +
                                    std::to_string(i));
      }
    }
    if (record.contains("caption")) {
      n.caption = record["caption"].get<std::string>();
    } else {
      for (size_t i = 0; i < utterances.size(); ++i) {
        if (i) n.caption += ' ';
        n.caption += utterances[i];
      }
    }

    if (record.contains("traces")) {
      for (const json& stroke : record["traces"]) {
        std::vector<TracePoint> points;
        for (const json& pt : stroke) {
          TracePoint p{pt.at("x").get<double>(), pt.at("y").get<double>(),
                       pt.at("t").get<double>()};
          if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.t)) {
            throw std::invalid_argument("non-finite trace point");
          }
          p.x = Clamp01(p.x);
          p.y = Clamp01(p.y);
          points.push_back(p);
        }
        if (!points.empty()) n.traces.push_back(std::move(points));
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(where, e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(where, e.what());
  } catch (const std::out_of_range& e) {
    throw ParseError(where, e.what());
  }
  return n;
}

NarrativeReader::NarrativeReader(std::istream& in, std::string source,
                                 bool strict)
    : in_(in), source_(std::move(source)), strict_(strict) {}

std::optional<Narrative> NarrativeReader::Next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_number_;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      return ParseNarrative(line, source_ + ":" + std::to_string(line_number_));
    } catch (const ParseError& e) {
      if (strict_) throw;
      diagnostics_.push_back({line_number_, e.what()});
    }
  }
  return std::nullopt;
}

std::vector<Narrative> LoadNarratives(const std::string& path, bool strict,
                                      std::vector<LoadDiagnostic>* diagnostics) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  NarrativeReader reader(in, path, strict);
  std::vector<Narrative> out;
  while (auto n = reader.Next()) out.push_back(std::move(*n));
  if (diagnostics != nullptr) *diagnostics = reader.diagnostics();
  return out;
}

TimeWindow PhraseTimeWindow(const Narrative& narrative, int first, int last) {
  if (first > last || first < 0 ||
      last >= static_cast<int>(narrative.tokens.size())) {
    throw InvalidArgumentError("token span [" + std::to_string(first) + ", " +
                               std::to_string(last) + "] is empty or out of range");
  }
  const double start = narrative.tokens[first].start;
  // Overlapping timings can put an earlier end after a later one; the
  // window must still be ordered.
  const double end = std::max(narrative.tokens[last].end, start);
  return {start, end};
}

std::vector<TracePoint> PointsInWindow(const Narrative& narrative,
                                       TimeWindow window) {
  std::vector<TracePoint> out;
  for (const auto& stroke : narrative.traces) {
    for (const TracePoint& p : stroke) {
      if (p.t >= window.start && p.t <= window.end) out.push_back(p);
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const TracePoint& a, const TracePoint& b) { return a.t < b.t; });
  return out;
}

}  // namespace panoground
