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

#include "commands.h"

#include <chrono>
#include <fstream>
#include <thread>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "riso/adhesion.h"
#include "riso/scenario.h"
#include "riso/trials.h"

namespace riso::cli {
namespace {

struct SweepDefaults {
  double from;
  double to;
};

absl::StatusOr<SweepDefaults> DefaultsFor(const std::string& sweep) {
  if (sweep == "radius") return SweepDefaults{2.5e-3, 12.5e-3};
  if (sweep == "curvature") return SweepDefaults{0.0, 200.0};
  if (sweep == "roughness") return SweepDefaults{0.1e-3, 5.0e-3};
  if (sweep == "porosity") return SweepDefaults{0.0, 0.8};
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown sweep '", sweep, "' (radius, curvature, roughness, porosity)"));
}

absl::Status WriteFile(const std::filesystem::path& path,
                       const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::PermissionDeniedError(
        absl::StrCat("cannot write ", path.string()));
  }
  out << text;
  out.close();
  if (!out) {
    return absl::DataLossError(absl::StrCat("error writing ", path.string()));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<std::vector<double>> SweepValues(const CharacterizeConfig& c) {
  absl::StatusOr<SweepDefaults> d = DefaultsFor(c.sweep);
  if (!d.ok()) return d.status();
  if (c.points < 0) return absl::InvalidArgumentError("points must be >= 0");
  const double from = c.from.value_or(d->from);
  const double to = c.to.value_or(d->to);
  std::vector<double> xs;
  if (c.points == 0 || from > to) return xs;
  if (c.points == 1) return std::vector<double>{from};
  for (int i = 0; i < c.points; ++i) {
    // Hit the endpoint exactly rather than accumulating a step.
    xs.push_back(i + 1 == c.points
                     ? to
                     : from + (to - from) * i / (c.points - 1));
  }
  return xs;
}

absl::StatusOr<std::string> CharacterizeCsv(const CharacterizeConfig& c) {
  absl::StatusOr<std::vector<double>> xs = SweepValues(c);
  if (!xs.ok()) return xs.status();
  const AdhesiveParams& params = DefaultAdhesiveParams();
  SurfaceDescriptor base;
  base.contact_radius =
      c.radius.value_or(c.sweep == "porosity" ? 7.5e-3 : 12.5e-3);
  base.height = 0.05;
  base.mass = 0.0;

  std::string csv = absl::StrCat(kCharacterizeHeader, "\n");
  for (double x : *xs) {
    SurfaceDescriptor s = base;
    if (c.sweep == "radius") s.contact_radius = x;
    if (c.sweep == "curvature") s.curvature = x;
    if (c.sweep == "roughness") s.roughness_spacing = x;
    if (c.sweep == "porosity") s.porosity = x;
    if (absl::Status v = ValidateSurface(s); !v.ok()) return v;
    const double nn =
        ForceCapacity(s, AdhesionMode::kNeutralToNegative, params);
    const double pn =
        ForceCapacity(s, AdhesionMode::kPositiveToNegative, params);
    const double pp =
        ForceCapacity(s, AdhesionMode::kPositiveToPositive, params);
    absl::StatusOr<double> sr =
        SwitchingRatio(s, params, AdhesionMode::kPositiveToNegative);
    absl::StrAppend(&csv, absl::StrFormat("%.9g,%.9g,%.9g,%.9g,", x, nn, pn,
                                          pp),
                    sr.ok() ? absl::StrFormat("%.9g", *sr) : "", "\n");
  }
  return csv;
}

absl::Status Characterize(const CharacterizeConfig& c) {
  absl::StatusOr<std::string> csv = CharacterizeCsv(c);
  if (!csv.ok()) return csv.status();
  return WriteFile(c.out, *csv);
}

std::filesystem::path SummaryPath(const std::filesystem::path& csv) {
  std::filesystem::path p = csv;
  p.replace_extension(".json");
  if (p == csv) p += ".json";
  return p;
}

absl::Status Run(const RunConfig& c, std::ostream& log) {
  absl::StatusOr<Scenario> scenario = ResolveScenario(c.scenario);
  if (!scenario.ok()) return scenario.status();
  if (!(c.beta >= 0.0)) return absl::InvalidArgumentError("beta must be >= 0");
  TrialConfig config;
  config.controller = c.controller;
  config.profile = c.profile;
  config.model.beta = c.beta;
  config.n_trials = c.trials;
  config.seed = c.seed;
  config.workers = c.workers;
  absl::StatusOr<MetricsTable> table = RunTrials(*scenario, config);
  if (!table.ok()) return table.status();
  if (absl::Status s = WriteFile(c.out, table->ToCsv()); !s.ok()) return s;
  if (absl::Status s = WriteFile(SummaryPath(c.out), table->SummaryJson());
      !s.ok()) {
    return s;
  }
  const MetricsRow& all = table->aggregate;
  log << absl::StrFormat(
      "%s on %s: %d/%d successful, mean inputs %.1f, mean trajectory %.3f m\n",
      ToString(c.controller).data(), scenario->name, all.successes,
      all.trials, all.mean_input_steps, all.mean_traj_len_m);
  return absl::OkStatus();
}

absl::Status Validate(const std::string& scenario, std::ostream& out) {
  absl::StatusOr<Scenario> sc = ResolveScenario(scenario);
  if (!sc.ok()) return sc.status();
  absl::StatusOr<WorldState> world = MakeWorld(*sc, 0);
  if (!world.ok()) return world.status();
  out << absl::StrFormat("ok: %s, %d objects, %d pads\n", sc->name,
                         sc->objects.size(), sc->gripper.n_pads);
  return absl::OkStatus();
}

absl::Status Serve(const ServerOptions& options,
                   const std::atomic<bool>& stop) {
  SessionServer server(options);
  if (absl::Status s = server.Start(); !s.ok()) return s;
  while (!stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
  server.Stop();
  return absl::OkStatus();
}

}  // namespace riso::cli
