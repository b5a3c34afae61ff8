// Copyright 2026 The RISO Sim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Subcommands of riso_sim, callable without going through argv.

#ifndef RISO_TOOLS_COMMANDS_H_
#define RISO_TOOLS_COMMANDS_H_

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "riso/control.h"
#include "riso/session_server.h"
#include "riso/synthetic_operator.h"

namespace riso::cli {

inline constexpr char kCharacterizeHeader[] =
    "x,f_c_neutral_neg,f_c_pos_neg,f_c_pos_pos,sr";

struct CharacterizeConfig {
  std::string sweep = "radius";  // radius | curvature | roughness | porosity
  std::optional<double> from;    // sweep units: m, 1/m, m, fraction
  std::optional<double> to;
  int points = 11;
  // Indenter radius for the non-radius sweeps. Defaults to 12.5 mm, or
  // 7.5 mm for porosity.
  std::optional<double> radius;
  std::filesystem::path out;
};

// Sample positions of the sweep; empty when points == 0 or from > to.
absl::StatusOr<std::vector<double>> SweepValues(const CharacterizeConfig& c);
absl::StatusOr<std::string> CharacterizeCsv(const CharacterizeConfig& c);
absl::Status Characterize(const CharacterizeConfig& c);

struct RunConfig {
  std::string scenario = "household15";
  ControllerKind controller = ControllerKind::kShared;
  std::uint64_t seed = 0;
  int trials = 100;
  double beta = 5.0;
  OperatorProfile profile;
  int workers = 0;
  // Metrics CSV; the JSON summary goes next to it with a .json extension.
  std::filesystem::path out = "riso_run.csv";
};

std::filesystem::path SummaryPath(const std::filesystem::path& csv);
absl::Status Run(const RunConfig& c, std::ostream& log);

// Prints a one-line report; the status carries the diagnostic on failure.
absl::Status Validate(const std::string& scenario, std::ostream& out);

// Serves until `stop` becomes true.
absl::Status Serve(const ServerOptions& options,
                   const std::atomic<bool>& stop);

}  // namespace riso::cli

#endif  // RISO_TOOLS_COMMANDS_H_
