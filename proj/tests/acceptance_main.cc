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

// End-to-end acceptance checks. Prints one "[PASS]" or "[FAIL]" line per
// criterion and exits non-zero if any check fails.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "absl/strings/str_format.h"
#include "commands.h"
#include "riso/adhesion.h"
#include "riso/control.h"
#include "riso/scenario.h"
#include "riso/trials.h"
#include "test_util.h"

namespace riso {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

SurfaceDescriptor Disc(double radius) {
  SurfaceDescriptor s;
  s.contact_radius = radius;
  s.height = 0.05;
  return s;
}

double Capacity(const SurfaceDescriptor& s, AdhesionMode mode) {
  return ForceCapacity(s, mode, DefaultAdhesiveParams());
}

Outcome CalibrationEndpoints() {
  const SurfaceDescriptor s = Disc(12.5e-3);
  const double nn = Capacity(s, AdhesionMode::kNeutralToNegative);
  const double pn = Capacity(s, AdhesionMode::kPositiveToNegative);
  const bool ok =
      std::abs(nn - 18.0) <= 0.18 && std::abs(pn - 50.0) <= 0.50;
  return {ok, absl::StrFormat("12.5 mm: %.4f N (target 18), %.4f N (target "
                              "50), tolerance 1%%",
                              nn, pn)};
}

Outcome SwitchingRatioCheck() {
  const AdhesiveParams& p = DefaultAdhesiveParams();
  std::vector<double> srs;
  for (double r : {2.5e-3, 5e-3, 7.5e-3, 10e-3, 12.5e-3}) {
    absl::StatusOr<double> sr =
        riso::SwitchingRatio(Disc(r), p, AdhesionMode::kPositiveToNegative);
    if (!sr.ok()) return {false, std::string(sr.status().message())};
    srs.push_back(*sr);
  }
  bool increasing = true;
  for (std::size_t i = 1; i < srs.size(); ++i) {
    increasing = increasing && srs[i] > srs[i - 1];
  }
  const bool near = std::abs(srs.back() - 187.0) <= 187.0 * 0.02;
  return {near && increasing,
          absl::StrFormat("SR(12.5 mm) = %.3f (187 +/- 2%%); over 2.5..12.5 "
                          "mm: %.1f %.1f %.1f %.1f %.1f, strictly increasing "
                          "= %s",
                          srs.back(), srs[0], srs[1], srs[2], srs[3], srs[4],
                          increasing ? "yes" : "no")};
}

std::vector<FitPoint> Synthetic(double g_c, int n, double noise,
                                std::mt19937_64* rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<FitPoint> points;
  for (int i = 0; i < n; ++i) {
    const double r = 2.5e-3 + 10e-3 * i / std::max(1, n - 1);
    const double x = std::sqrt(std::numbers::pi * r * r / 6.4e-6);
    double f = std::sqrt(g_c) * x;
    if (rng != nullptr) f *= 1.0 + noise * gauss(*rng);
    points.push_back({x, f});
  }
  return points;
}

Outcome FractureEnergyFit() {
  const auto start = Clock::now();
  double worst_exact = 0.0;
  double worst_noisy = 0.0;
  for (double g_c : {4.2, 44.7}) {
    absl::StatusOr<double> fit = FitFractureEnergy(Synthetic(g_c, 20, 0, nullptr));
    if (!fit.ok()) return {false, std::string(fit.status().message())};
    worst_exact = std::max(worst_exact, std::abs(*fit - g_c) / g_c);
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      std::mt19937_64 rng(seed);
      fit = FitFractureEnergy(Synthetic(g_c, 20, 0.01, &rng));
      if (!fit.ok()) return {false, std::string(fit.status().message())};
      worst_noisy = std::max(worst_noisy, std::abs(*fit - g_c) / g_c);
    }
  }
  const double t = Seconds(start);
  return {worst_exact <= 1e-9 && worst_noisy <= 0.02 && t < 5.0,
          absl::StrFormat("noise-free max rel err %.2e (<= 1e-9); 1%% noise, "
                          "20 points, 1000 seeds max rel err %.4f (<= 0.02); "
                          "%.2f s (< 5 s)",
                          worst_exact, worst_noisy, t)};
}

Outcome SurfaceTrends() {
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> radius(1e-3, 12.5e-3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int violations = 0;
  int checks = 0;
  const auto check = [&](bool ok) {
    ++checks;
    violations += ok ? 0 : 1;
  };
  for (int i = 0; i < 500; ++i) {
    SurfaceDescriptor s = Disc(radius(rng));
    s.curvature = 300.0 * unit(rng);
    s.roughness_spacing = unit(rng) < 0.2 ? kSmooth : 1e-4 + 5e-3 * unit(rng);
    s.porosity = 0.9 * unit(rng);
    const double nn = Capacity(s, AdhesionMode::kNeutralToNegative);
    check(Capacity(s, AdhesionMode::kPositiveToNegative) >= nn);

    SurfaceDescriptor more = s;
    more.porosity = std::min(0.95, s.porosity + 0.05);
    check(Capacity(more, AdhesionMode::kNeutralToNegative) <= nn);
    more = s;
    more.curvature = s.curvature + 20.0;
    check(Capacity(more, AdhesionMode::kNeutralToNegative) <= nn);
    if (std::isfinite(s.roughness_spacing)) {
      more = s;
      more.roughness_spacing = s.roughness_spacing * 1.5;
      check(Capacity(more, AdhesionMode::kNeutralToNegative) >= nn);
    }
  }
  SurfaceDescriptor porous = Disc(7.5e-3);
  porous.porosity = 0.8;
  const double f = Capacity(porous, AdhesionMode::kNeutralToNegative);
  const bool near = std::abs(f - 0.9) <= 0.9 * 0.2;
  return {violations == 0 && near,
          absl::StrFormat("%d/%d monotonicity checks hold; porosity 0.8 at "
                          "7.5 mm: %.3f N (0.9 N +/- 20%%)",
                          checks - violations, checks, f)};
}

Outcome MassRange() {
  const auto start = Clock::now();
  absl::StatusOr<Scenario> sc = ResolveScenario("household15_extended");
  if (!sc.ok()) return {false, std::string(sc.status().message())};
  const ScenarioObject* light = nullptr;
  const ScenarioObject* heavy = nullptr;
  for (const ScenarioObject& o : sc->objects) {
    if (light == nullptr || o.surface.mass < light->surface.mass) light = &o;
    if (heavy == nullptr || o.surface.mass > heavy->surface.mass) heavy = &o;
  }
  TrialConfig config;
  config.controller = ControllerKind::kAutonomous;
  std::string detail;
  bool ok = true;
  for (const ScenarioObject* o : {light, heavy}) {
    EpisodeSpec spec{o->id, 1, {o->id}};
    absl::StatusOr<EpisodeResult> r = RunEpisode(*sc, config, spec);
    const bool success = r.ok() && r->success;
    const std::string grasp =
        r.ok() && r->grasp_type_used ? ToString(*r->grasp_type_used) : "none";
    ok = ok && success;
    detail += absl::StrFormat("%s (%g kg) %s via %s; ", o->id, o->surface.mass,
                              success ? "in bin" : "NOT in bin", grasp);
  }
  const bool span = light->surface.mass <= 2e-6 && heavy->surface.mass >= 2.0;
  const double t = Seconds(start);
  return {ok && span && t < 10.0,
          detail + absl::StrFormat("%.2f s (< 10 s)", t)};
}

Outcome BayesOracles() {
  const WorldState w = testing::SmallWorld(
      {{"a", {0.40, -0.25, 0.0}}, {"b", {0.65, -0.15, 0.0}}},
      /*multi_object_targets=*/true);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  std::uniform_real_distribution<double> v(-0.25, 0.25);
  double worst_bayes = 0.0;
  double worst_assist = 0.0;
  std::size_t hypotheses = 0;
  for (int trial = 0; trial < 500; ++trial) {
    Belief prior = UniformBelief(w, 0.0);
    hypotheses = prior.entries.size();
    double total = 0.0;
    for (BeliefEntry& e : prior.entries) total += (e.p = u(rng));
    for (BeliefEntry& e : prior.entries) e.p /= total;
    const Vec3 input{v(rng), v(rng), v(rng)};
    const std::vector<double> want =
        testing::BruteForcePosterior(w, prior, input, 5.0);
    const Belief got = UpdateBelief(prior, w, {input, std::nullopt}, {5.0});
    for (std::size_t i = 0; i < want.size(); ++i) {
      worst_bayes = std::max(worst_bayes, std::abs(got.entries[i].p - want[i]));
    }
    const Vec3 a = AssistDisplacement(prior, w);
    const Vec3 d = testing::DirectDoubleSum(w, prior);
    worst_assist = std::max({worst_assist, std::abs(a.x - d.x),
                             std::abs(a.y - d.y), std::abs(a.z - d.z)});
  }

  // Decisive input on the full household scene.
  absl::StatusOr<Scenario> sc = ResolveScenario("household15");
  if (!sc.ok()) return {false, std::string(sc.status().message())};
  int worst_ticks = 0;
  for (const ScenarioObject& target : sc->objects) {
    WorldState world = *MakeWorld(*sc, 0);
    const GraspType g = AutonomousGraspType(*world.Find(target.id));
    SharedAutonomy shared;
    int ticks = 1;
    for (; ticks <= 60; ++ticks) {
      world = Step(world, shared.Act(world, testing::DecisiveInput(
                                                world, target.id, g)));
      if (shared.belief().Get(target.id, g) > 0.9) break;
    }
    worst_ticks = std::max(worst_ticks, ticks);
  }
  return {worst_bayes <= 1e-12 && worst_assist <= 1e-12 && worst_ticks <= 60,
          absl::StrFormat("2 objects x %d grasps: posterior max err %.1e, "
                          "assist max err %.1e (<= 1e-12); belief > 0.9 "
                          "after at most %d ticks over 15 targets (<= 60)",
                          static_cast<int>(hypotheses / 2), worst_bayes,
                          worst_assist, worst_ticks)};
}

Outcome EffortReduction() {
  const auto start = Clock::now();
  absl::StatusOr<Scenario> sc = ResolveScenario("household15");
  if (!sc.ok()) return {false, std::string(sc.status().message())};
  TrialConfig config;
  config.n_trials = 100;
  config.seed = 1;
  config.controller = ControllerKind::kHuman;
  absl::StatusOr<MetricsTable> human = RunTrials(*sc, config);
  config.controller = ControllerKind::kShared;
  absl::StatusOr<MetricsTable> shared = RunTrials(*sc, config);
  if (!human.ok() || !shared.ok()) return {false, "trial run failed"};
  const MetricsRow& h = human->aggregate;
  const MetricsRow& s = shared->aggregate;
  const double reduction = 1.0 - s.mean_input_steps / h.mean_input_steps;
  const double gap = 100.0 * std::abs(s.success_rate() - h.success_rate());
  const double t = Seconds(start);
  return {reduction >= 0.20 && gap <= 5.0 && t < 60.0,
          absl::StrFormat("mean inputs human %.1f, shared %.1f: %.1f%% fewer "
                          "(>= 20%%); success %.0f%% vs %.0f%% (within 5 "
                          "points); %.2f s (< 60 s)",
                          h.mean_input_steps, s.mean_input_steps,
                          100.0 * reduction, 100.0 * h.success_rate(),
                          100.0 * s.success_rate(), t)};
}

std::string Slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome RunDeterminism() {
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() /
      ("riso_acceptance_" + std::to_string(getpid()));
  std::filesystem::create_directories(dir);
  int compared = 0;
  bool same = true;
  std::ostringstream log;
  for (ControllerKind kind : {ControllerKind::kAutonomous,
                              ControllerKind::kHuman, ControllerKind::kShared}) {
    cli::RunConfig c;
    c.controller = kind;
    c.trials = 30;
    c.seed = 123;
    c.out = dir / "first.csv";
    if (!cli::Run(c, log).ok()) return {false, "run failed"};
    c.out = dir / "second.csv";
    if (!cli::Run(c, log).ok()) return {false, "run failed"};
    same = same && Slurp(dir / "first.csv") == Slurp(dir / "second.csv") &&
           Slurp(dir / "first.json") == Slurp(dir / "second.json");
    compared += 2;
  }
  std::filesystem::remove_all(dir);
  return {same, absl::StrFormat("%d CSV/JSON pairs from repeated runs "
                                "(3 controllers, 30 trials, seed 123) %s",
                                compared,
                                same ? "byte-identical" : "DIFFER")};
}

// Drives the autonomous pick-and-place with a fixed grasp type.
bool PickWith(const Scenario& sc, const ObjectId& id, const GraspType& g) {
  WorldState w = *MakeWorld(sc, 0, std::vector<ObjectId>{id});
  while (CheckEpisode(w, id) == EpisodeStatus::kRunning) {
    w = Step(w, AutonomousPolicy(w, {id, g}));
  }
  return CheckEpisode(w, id) == EpisodeStatus::kSuccess;
}

Outcome GraspPattern() {
  absl::StatusOr<Scenario> sc = ResolveScenario("household15");
  if (!sc.ok()) return {false, std::string(sc.status().message())};
  const bool quarter_rigid = PickWith(*sc, "quarter", GraspType::Rigid());
  const bool quarter_soft = PickWith(*sc, "quarter", GraspType::Soft(0));
  const bool weight_soft = PickWith(*sc, "weight", GraspType::Soft(0));
  const bool weight_rigid = PickWith(*sc, "weight", GraspType::Rigid());
  auto word = [](bool b) { return b ? "succeeds" : "fails"; };
  return {!quarter_rigid && quarter_soft && !weight_soft && weight_rigid,
          absl::StrFormat("quarter: rigid %s, soft %s; weight: soft %s, "
                          "rigid %s",
                          word(quarter_rigid), word(quarter_soft),
                          word(weight_soft), word(weight_rigid))};
}

}  // namespace
}  // namespace riso

int main() {
  struct Criterion {
    const char* name;
    std::function<riso::Outcome()> check;
  };
  const std::vector<Criterion> criteria = {
      {"calibration_endpoints", riso::CalibrationEndpoints},
      {"switching_ratio", riso::SwitchingRatioCheck},
      {"fracture_energy_fit", riso::FractureEnergyFit},
      {"surface_trends", riso::SurfaceTrends},
      {"mass_range", riso::MassRange},
      {"bayes_oracles", riso::BayesOracles},
      {"shared_effort_reduction", riso::EffortReduction},
      {"run_determinism", riso::RunDeterminism},
      {"grasp_type_pattern", riso::GraspPattern},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const riso::Outcome o = c.check();
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", c.name,
                o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
