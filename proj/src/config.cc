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

#include "panoground/config.h"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "panoground/errors.h"
#include "panoground/evaluator.h"

namespace panoground {

namespace {

std::string Trim(std::string_view s) {
  const size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double ParseDouble(std::string_view key, const std::string& value) {
  try {
    size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw InvalidArgumentError(std::string(key) + ": not a number: " + value);
  }
}

bool ParseBool(std::string_view key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw InvalidArgumentError(std::string(key) + ": not a boolean: " + value);
}

}  // namespace

std::map<std::string, std::string> ParseKeyValues(std::string_view text,
                                                  const std::string& source) {
  std::map<std::string, std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string t = Trim(line);
    if (t.empty() || t[0] == '#') continue;
    const size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw ParseError(source + ":" + std::to_string(number),
                       "expected \"key = value\"");
    }
    out[Trim(t.substr(0, eq))] = Trim(t.substr(eq + 1));
  }
  return out;
}

void ApplyConfigValue(const std::string& key, const std::string& value,
                      Config& c) {
  const std::map<std::string, std::string*> paths = {
      {"narratives", &c.narratives},       {"panoptic_json", &c.panoptic_json},
      {"panoptic_dir", &c.panoptic_dir},   {"categories", &c.categories},
      {"wordnet_dir", &c.wordnet_dir},     {"manual_table", &c.manual_table},
      {"lexicon", &c.lexicon},             {"grounded", &c.grounded},
      {"predictions", &c.predictions},     {"proposals_dir", &c.proposals_dir},
      {"base_image", &c.base_image},       {"narrative_id", &c.narrative_id},
      {"out", &c.out},                     {"diagnostics", &c.diagnostics},
  };
  if (auto it = paths.find(key); it != paths.end()) {
    *it->second = value;
  } else if (key == "workers") {
    const double w = ParseDouble(key, value);
    if (w < 1 || w != std::floor(w)) {
      throw InvalidArgumentError("workers must be a positive integer");
    }
    c.workers = static_cast<int>(w);
  } else if (key == "strict") {
    c.strict = ParseBool(key, value);
  } else if (key == "thresholds") {
    c.thresholds = ParseThresholds(value);
  } else if (key == "max_vicinity_distance") {
    c.max_vicinity_distance =
        value == "inf" ? std::numeric_limits<double>::infinity()
                       : ParseDouble(key, value);
    if (c.max_vicinity_distance < 0) {
      throw InvalidArgumentError("max_vicinity_distance must be >= 0");
    }
  } else {
    throw InvalidArgumentError("unknown config key \"" + key + "\"");
  }
}

Config LoadConfigFile(const std::string& path) {
  namespace fs = std::filesystem;
  const fs::path base = fs::path(path).parent_path();
  RequireExisting("config", path);
  Config c;
  for (const auto& [k, v] : ParseKeyValues(ReadFileToString(path), path)) {
    const bool is_path = k != "workers" && k != "strict" && k != "thresholds" &&
                         k != "max_vicinity_distance" && k != "narrative_id";
    if (is_path && !v.empty() && fs::path(v).is_relative()) {
      ApplyConfigValue(k, (base / v).lexically_normal().string(), c);
    } else {
      ApplyConfigValue(k, v, c);
    }
  }
  return c;
}

std::vector<double> ParseThresholds(std::string_view spec) {
  const std::string s = Trim(spec);
  if (s.find(',') == std::string::npos && s.find('.') == std::string::npos) {
    int points = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), points);
    if (ec != std::errc() || ptr != s.data() + s.size() || points < 1) {
      throw InvalidArgumentError("bad threshold grid \"" + s + "\"");
    }
    return ThresholdGrid(points);
  }
  std::vector<double> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    out.push_back(ParseDouble("thresholds", Trim(item)));
  }
  for (size_t i = 0; i < out.size(); ++i) {
    if (!(out[i] > 0 && out[i] <= 1) || (i > 0 && !(out[i] > out[i - 1]))) {
      throw InvalidArgumentError("thresholds must ascend strictly within (0, 1]");
    }
  }
  return out;
}

void RequireExisting(std::string_view what, const std::string& path) {
  if (path.empty()) {
    throw InvalidArgumentError("missing required setting: " + std::string(what));
  }
  if (!std::filesystem::exists(path)) {
    throw NotFoundError(std::string(what) + " not found: " + path);
  }
}

}  // namespace panoground
