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

#include "riso/trials.h"

#include <algorithm>
#include <atomic>
#include <deque>
#include <thread>

#include "absl/strings/str_format.h"
#include "json.hpp"
#include "spdlog/spdlog.h"

namespace riso {
namespace {

MetricsRow Reduce(std::string controller, std::string object_id,
                  const std::vector<const EpisodeResult*>& results) {
  MetricsRow row;
  row.controller = std::move(controller);
  row.object_id = std::move(object_id);
  row.trials = static_cast<int>(results.size());
  double inputs = 0.0;
  double traj = 0.0;
  for (const EpisodeResult* r : results) {
    row.successes += r->success ? 1 : 0;
    inputs += static_cast<double>(r->human_input_steps);
    traj += r->trajectory_length;
  }
  if (row.trials > 0) {
    row.mean_input_steps = inputs / row.trials;
    row.mean_traj_len_m = traj / row.trials;
  }
  return row;
}

std::string CsvRow(const MetricsRow& r) {
  return absl::StrFormat("%s,%s,%d,%d,%.6f,%.6f\n", r.controller, r.object_id,
                         r.trials, r.successes, r.mean_input_steps,
                         r.mean_traj_len_m);
}

}  // namespace

EpisodeSpec PlanEpisode(const Scenario& scenario, const TrialConfig& config,
                        int index) {
  EpisodeSpec spec;
  const int k = static_cast<int>(scenario.objects.size());
  spec.seed = DeriveSeed(config.seed, static_cast<std::uint64_t>(index));
  if (k == 0) return spec;
  const int target = index % k;
  spec.target = scenario.objects[target].id;

  std::vector<int> chosen{target};
  if (config.controller != ControllerKind::kAutonomous) {
    std::vector<int> others;
    for (int i = 0; i < k; ++i) {
      if (i != target) others.push_back(i);
    }
    OperatorRng rng(DeriveSeed(spec.seed, 1));
    const int n = std::min<int>(config.n_distractors, others.size());
    for (int i = 0; i < n; ++i) {
      const int j = i + static_cast<int>(rng.Next() % (others.size() - i));
      std::swap(others[i], others[j]);
      chosen.push_back(others[i]);
    }
  }
  std::sort(chosen.begin(), chosen.end());
  for (int i : chosen) spec.objects.push_back(scenario.objects[i].id);
  return spec;
}

absl::StatusOr<EpisodeResult> RunEpisode(const Scenario& scenario,
                                         const TrialConfig& config,
                                         const EpisodeSpec& spec) {
  absl::StatusOr<WorldState> start = MakeWorld(scenario, spec.seed, spec.objects);
  if (!start.ok()) return start.status();
  WorldState world = *std::move(start);
  const WorldObject* target = world.Find(spec.target);
  if (target == nullptr) {
    return absl::NotFoundError(absl::StrCat("no target '", spec.target, "'"));
  }
  GraspIntent intent{spec.target, AutonomousGraspType(*target)};
  if (intent.grasp.UsesPad() && world.gripper.n_pads() == 0) {
    intent.grasp = GraspType::Rigid();
  }

  const bool shared = config.controller == ControllerKind::kShared;
  SharedAutonomyParams assist_params;
  assist_params.model = config.model;
  SharedAutonomy assist(assist_params);
  OperatorRng rng(spec.seed);
  std::deque<ActionTwist> pipeline(config.profile.reaction_delay);
  EpisodeLog log;
  log.Start(world);
  while (CheckEpisode(world, spec.target) == EpisodeStatus::kRunning) {
    ActionTwist human;
    ActionTwist command;
    if (config.controller == ControllerKind::kAutonomous) {
      command = AutonomousPolicy(world);
    } else {
      pipeline.push_back(
          OperatorAction(world, intent, config.profile, rng, shared));
      human = pipeline.front();
      pipeline.pop_front();
      command = shared ? assist.Act(world, human) : human;
    }
    world = Step(world, command);
    log.Record(world, human);
  }
  return ComputeEpisodeResult(world, log, spec.target);
}

absl::StatusOr<MetricsTable> RunTrials(const Scenario& scenario,
                                       const TrialConfig& config) {
  if (absl::Status s = ValidateProfile(config.profile); !s.ok()) return s;
  if (config.n_trials < 0) {
    return absl::InvalidArgumentError("n_trials: must be >= 0");
  }
  MetricsTable table;
  const std::string controller(ToString(config.controller));
  table.aggregate = Reduce(controller, "all", {});
  if (config.n_trials == 0 || scenario.objects.empty()) return table;

  const int n = config.n_trials;
  std::vector<EpisodeSpec> specs;
  specs.reserve(n);
  for (int e = 0; e < n; ++e) specs.push_back(PlanEpisode(scenario, config, e));

  std::vector<absl::StatusOr<EpisodeResult>> results(
      n, absl::UnknownError("not run"));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int e = next++; e < n; e = next++) {
      results[e] = RunEpisode(scenario, config, specs[e]);
    }
  };
  int workers = config.workers > 0
                    ? config.workers
                    : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, n);
  std::vector<std::thread> pool;
  for (int i = 1; i < workers; ++i) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  for (int e = 0; e < n; ++e) {
    if (!results[e].ok()) return results[e].status();
    table.episodes.push_back(*results[e]);
  }
  std::vector<const EpisodeResult*> all;
  for (const EpisodeResult& r : table.episodes) all.push_back(&r);
  for (const ScenarioObject& obj : scenario.objects) {
    std::vector<const EpisodeResult*> mine;
    for (int e = 0; e < n; ++e) {
      if (specs[e].target == obj.id) mine.push_back(&table.episodes[e]);
    }
    if (!mine.empty()) table.rows.push_back(Reduce(controller, obj.id, mine));
  }
  table.aggregate = Reduce(controller, "all", all);
  spdlog::debug("{} trials ({}): {}/{} successful", n, controller,
                table.aggregate.successes, n);
  return table;
}

std::string MetricsTable::ToCsv() const {
  std::string out = absl::StrCat(kMetricsCsvHeader, "\n");
  for (const MetricsRow& r : rows) out += CsvRow(r);
  if (aggregate.trials > 0) out += CsvRow(aggregate);
  return out;
}

std::string MetricsTable::SummaryJson() const {
  nlohmann::ordered_json j;
  j["controller"] = aggregate.controller;
  j["trials"] = aggregate.trials;
  j["successes"] = aggregate.successes;
  j["success_rate"] = aggregate.success_rate();
  j["mean_inputs"] = aggregate.mean_input_steps;
  j["mean_traj"] = aggregate.mean_traj_len_m;
  return j.dump(2) + "\n";
}

}  // namespace riso
