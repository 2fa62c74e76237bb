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

#ifndef PANOGROUND_CONFIG_H_
#define PANOGROUND_CONFIG_H_

#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace panoground {

struct Config {
  // Inputs.
  std::string narratives;
  std::string panoptic_json;
  std::string panoptic_dir;
  std::string categories;  // defaults to panoptic_json
  std::string wordnet_dir;
  std::string manual_table;  // built-in table when empty
  std::string lexicon;       // built-in lexicon when empty
  std::string grounded;
  std::string predictions;
  std::string proposals_dir;
  std::string base_image;
  std::string narrative_id;
  // Outputs.
  std::string out;
  std::string diagnostics;  // defaults to <out>.diagnostics.txt

  int workers = 1;
  bool strict = false;
  std::vector<double> thresholds;  // empty = 100-point grid
  double max_vicinity_distance = std::numeric_limits<double>::infinity();
};

// "key = value" lines; blank lines and '#' comments are ignored. Throws
// ParseError.
std::map<std::string, std::string> ParseKeyValues(std::string_view text,
                                                  const std::string& source);

// Throws InvalidArgumentError for unknown keys or bad values.
void ApplyConfigValue(const std::string& key, const std::string& value,
                      Config& config);
// Relative paths in the file resolve against the file's directory.
Config LoadConfigFile(const std::string& path);

// "N" -> N-point grid {1/N, ..., 1}; otherwise a comma-separated list.
std::vector<double> ParseThresholds(std::string_view spec);

// Throws NotFoundError naming the first path that does not exist, and
// InvalidArgumentError if a required one is unset.
void RequireExisting(std::string_view what, const std::string& path);

}  // namespace panoground

#endif  // PANOGROUND_CONFIG_H_
