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

#ifndef PANOGROUND_COMMANDS_H_
#define PANOGROUND_COMMANDS_H_

#include <cstddef>

#include "panoground/config.h"
#include "panoground/evaluator.h"
#include "panoground/stats_reporter.h"

namespace panoground {

struct TransferSummary {
  size_t narratives = 0;
  size_t grounded = 0;
  size_t diagnostics = 0;
};

// Each command validates its required settings up front, then writes
// `config.out`.
TransferSummary RunTransfer(const Config& config);
ArReport RunEvaluate(const Config& config);
ArReport RunOracle(const Config& config);
StatsReport RunStats(const Config& config);
void RunRender(const Config& config);

}  // namespace panoground

#endif  // PANOGROUND_COMMANDS_H_
