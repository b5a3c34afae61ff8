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

// riso_sim: characterization sweeps, batch experiments, scenario checks and
// the teleoperation session server.
//
//   riso_sim characterize --sweep radius --out radius.csv
//   riso_sim run --scenario household15 --controller shared --seed 7
//   riso_sim validate --scenario data/scenarios/household15.json
//   riso_sim serve --port 8901

#include <atomic>
#include <csignal>
#include <iostream>

#include "CLI11.hpp"
#include "commands.h"
#include "riso/logging.h"

namespace {

constexpr int kExitUsage = 2;

std::atomic<bool> g_stop{false};

void OnSignal(int) { g_stop = true; }

int Report(const absl::Status& status) {
  if (status.ok()) return 0;
  std::cerr << "riso_sim: " << status.message() << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  riso::InitLoggingFromEnv();

  CLI::App app{"RISO gripper tabletop simulator"};
  app.require_subcommand(1);

  riso::cli::CharacterizeConfig characterize;
  std::string characterize_out = "characterize.csv";
  CLI::App* c_cmd = app.add_subcommand(
      "characterize", "Force capacity and switching ratio over a sweep");
  c_cmd->add_option("--sweep", characterize.sweep, "Swept property")
      ->check(CLI::IsMember({"radius", "curvature", "roughness", "porosity"}))
      ->capture_default_str();
  c_cmd->add_option("--from", characterize.from,
                    "Sweep start (m, 1/m, m or fraction)");
  c_cmd->add_option("--to", characterize.to, "Sweep end");
  c_cmd->add_option("--points", characterize.points, "Number of samples")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  c_cmd->add_option("--radius", characterize.radius,
                    "Indenter radius for non-radius sweeps (m)");
  c_cmd->add_option("--out", characterize_out, "Output CSV")
      ->capture_default_str();

  riso::cli::RunConfig run;
  std::string run_out = run.out.string();
  std::string run_controller;
  CLI::App* r_cmd =
      app.add_subcommand("run", "Batch pick-and-place experiment");
  r_cmd->add_option("--scenario", run.scenario, "Scenario name or JSON path")
      ->capture_default_str();
  r_cmd->add_option("--controller", run_controller, "Controller")
      ->check(CLI::IsMember({"autonomous", "human", "shared"}))
      ->required();
  r_cmd->add_option("--seed", run.seed, "Base seed")->capture_default_str();
  r_cmd->add_option("--trials", run.trials, "Number of episodes")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  r_cmd->add_option("--beta", run.beta, "Inference rationality")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  r_cmd->add_option("--beta-human", run.profile.beta_h,
                    "Synthetic operator rationality")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  r_cmd->add_option("--reaction-delay", run.profile.reaction_delay,
                    "Operator delay (ticks)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  r_cmd->add_option("--idle-threshold", run.profile.idle_threshold,
                    "Operator idle distance under assistance (m)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  r_cmd->add_option("--workers", run.workers, "Threads, 0 = all cores")
      ->check(CLI::NonNegativeNumber);
  r_cmd->add_option("--out", run_out,
                    "Metrics CSV (summary JSON written alongside)")
      ->capture_default_str();

  std::string validate_scenario;
  CLI::App* v_cmd =
      app.add_subcommand("validate", "Check a scenario document");
  v_cmd->add_option("--scenario", validate_scenario, "Scenario name or path")
      ->required();

  riso::ServerOptions serve;
  std::string results;
  CLI::App* s_cmd =
      app.add_subcommand("serve", "Teleoperation session server");
  s_cmd->add_option("--port", serve.port, "TCP port")
      ->check(CLI::Range(0, 65535))
      ->capture_default_str();
  s_cmd->add_option("--host", serve.host, "Bind address")
      ->capture_default_str();
  s_cmd->add_option("--seed", serve.base_seed, "Base seed for sessions")
      ->capture_default_str();
  s_cmd->add_option("--beta", serve.model.beta, "Inference rationality")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  s_cmd->add_option("--realtime-factor", serve.realtime_factor,
                    "Simulated seconds per wall second")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  s_cmd->add_option("--out", results, "Append episode results to this CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (c_cmd->parsed()) {
    characterize.out = characterize_out;
    return Report(riso::cli::Characterize(characterize));
  }
  if (r_cmd->parsed()) {
    run.out = run_out;
    run.controller = *riso::ParseControllerKind(run_controller);
    return Report(riso::cli::Run(run, std::cout));
  }
  if (v_cmd->parsed()) {
    return Report(riso::cli::Validate(validate_scenario, std::cout));
  }
  if (!results.empty()) serve.results_csv = results;
  std::signal(SIGINT, OnSignal);
  std::signal(SIGTERM, OnSignal);
  return Report(riso::cli::Serve(serve, g_stop));
}
