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

// Batch pick-and-place experiments.
//
// Episode e of a run targets scenario object (e mod K) and is seeded with
// DeriveSeed(seed, e). Autonomous episodes place the target alone; operator
// episodes (human and shared) add seeded distractors so intent is ambiguous.
// Episodes are independent and may run on several threads; results are
// reduced in episode order, so output is identical for any thread count.

#ifndef RISO_TRIALS_H_
#define RISO_TRIALS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "riso/control.h"
#include "riso/scenario.h"
#include "riso/synthetic_operator.h"

namespace riso {

struct TrialConfig {
  ControllerKind controller = ControllerKind::kAutonomous;
  OperatorProfile profile;
  RationalityModel model;  // shared controller only
  int n_trials = 0;
  std::uint64_t seed = 0;
  int n_distractors = 2;
  int workers = 0;  // 0 picks the hardware concurrency
};

struct EpisodeSpec {
  ObjectId target;
  std::uint64_t seed = 0;
  std::vector<ObjectId> objects;  // objects placed, scenario order
};

// Episode `index` of a run, before it is simulated.
EpisodeSpec PlanEpisode(const Scenario& scenario, const TrialConfig& config,
                        int index);

absl::StatusOr<EpisodeResult> RunEpisode(const Scenario& scenario,
                                         const TrialConfig& config,
                                         const EpisodeSpec& spec);

struct MetricsRow {
  std::string controller;
  std::string object_id;  // "all" for the aggregate row
  int trials = 0;
  int successes = 0;
  double mean_input_steps = 0.0;
  double mean_traj_len_m = 0.0;

  double success_rate() const {
    return trials == 0 ? 0.0 : static_cast<double>(successes) / trials;
  }
};

struct MetricsTable {
  std::vector<MetricsRow> rows;  // per object, scenario order
  MetricsRow aggregate;
  std::vector<EpisodeResult> episodes;

  std::string ToCsv() const;
  // {"success_rate": .., "mean_inputs": .., "mean_traj": ..} plus run info.
  std::string SummaryJson() const;
};

inline constexpr char kMetricsCsvHeader[] =
    "controller,object_id,trials,successes,mean_input_steps,mean_traj_len_m";

absl::StatusOr<MetricsTable> RunTrials(const Scenario& scenario,
                                       const TrialConfig& config);

}  // namespace riso

#endif  // RISO_TRIALS_H_
