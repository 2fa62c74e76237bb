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

#include "panoground/grounded_io.h"

#include <fstream>

#include "json.hpp"
#include "panoground/errors.h"

namespace panoground {

using nlohmann::ordered_json;

std::string FormatGroundedLine(const GroundedNarrative& n) {
  ordered_json line;
  line["narrative_id"] = n.narrative_id;
  line["image_id"] = n.image_id;
  line["caption"] = n.caption;
  ordered_json phrases = ordered_json::array();
  for (const GroundedPhrase& g : n.phrases) {
    ordered_json p;
    p["text"] = g.phrase.text;
    p["first_token"] = g.phrase.first_token;
    p["last_token"] = g.phrase.last_token;
    p["is_plural"] = g.phrase.is_plural;
    p["match_rank"] = std::string(MatchRankName(g.match_rank));
    p["via_vicinity"] = g.via_vicinity;
    p["com"] = {g.com.x, g.com.y};
    p["segment_ids"] = g.segment_ids;
    phrases.push_back(std::move(p));
  }
  line["phrases"] = std::move(phrases);
  return line.dump();
}

void WriteGroundedAnnotations(std::ostream& out,
                              std::span<const GroundedNarrative> narratives) {
  for (const GroundedNarrative& n : narratives) out << FormatGroundedLine(n) << '\n';
}

GroundedNarrative ParseGroundedLine(std::string_view line,
                                    const std::string& where) {
  GroundedNarrative n;
  try {
    const ordered_json j = ordered_json::parse(line);
    const auto& id = j.at("narrative_id");
    n.narrative_id = id.is_string() ? id.get<std::string>() : id.dump();
    n.image_id = j.at("image_id").get<int64_t>();
    n.caption = j.value("caption", "");
    for (const auto& p : j.at("phrases")) {
      GroundedPhrase g;
      g.phrase.text = p.at("text").get<std::string>();
      g.phrase.first_token = p.at("first_token").get<int>();
      g.phrase.last_token = p.at("last_token").get<int>();
      g.phrase.is_plural = p.at("is_plural").get<bool>();
      const auto& rank = p.at("match_rank");
      std::optional<MatchRank> r;
      if (rank.is_string()) {
        r = ParseMatchRank(rank.get<std::string>());
      } else {
        const int v = rank.get<int>();
        if (v >= 1 && v <= 5) r = static_cast<MatchRank>(v);
      }
      if (!r) throw ParseError(where, "bad match_rank " + rank.dump());
      g.match_rank = *r;
      g.via_vicinity = p.at("via_vicinity").get<bool>();
      const auto& com = p.at("com");
      g.com = {com.at(0).get<int>(), com.at(1).get<int>()};
      g.segment_ids = p.at("segment_ids").get<std::vector<SegmentId>>();
      if (g.segment_ids.empty()) throw ParseError(where, "phrase without segments");
      n.phrases.push_back(std::move(g));
    }
  } catch (const ordered_json::parse_error& e) {
    throw ParseError(where + " offset " + std::to_string(e.byte), e.what());
  } catch (const ordered_json::exception& e) {
    throw ParseError(where, e.what());
  }
  return n;
}

std::vector<GroundedNarrative> LoadGroundedAnnotations(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<GroundedNarrative> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(ParseGroundedLine(line, path + ":" + std::to_string(number)));
  }
  return out;
}

}  // namespace panoground
