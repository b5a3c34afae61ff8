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

#include <benchmark/benchmark.h>

#include "riso/adhesion.h"
#include "riso/control.h"
#include "riso/scenario.h"
#include "riso/synthetic_operator.h"
#include "riso/trials.h"

namespace riso {
namespace {

void BM_ForceCapacity(benchmark::State& state) {
  const AdhesiveParams& params = DefaultAdhesiveParams();
  SurfaceDescriptor s;
  s.contact_radius = 7.5e-3;
  s.height = 0.02;
  s.curvature = 40.0;
  s.roughness_spacing = 1e-3;
  s.porosity = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ForceCapacity(s, AdhesionMode::kPositiveToNegative, params));
    s.porosity = s.porosity < 0.8 ? s.porosity + 1e-6 : 0.0;
  }
}
BENCHMARK(BM_ForceCapacity);

WorldState Household() {
  return *MakeWorld(*ResolveScenario("household15"), 0);
}

void BM_WorldStep(benchmark::State& state) {
  const WorldState start = Household();
  WorldState w = start;
  OperatorRng rng(1);
  for (auto _ : state) {
    const Vec3 v = SampleDirection({0.0, 0.0, -1.0}, 1.0, rng) * 0.1;
    w = Step(w, ActionTwist{v, std::nullopt});
    if (w.step >= 1000) w = start;
  }
}
BENCHMARK(BM_WorldStep);

void BM_BeliefUpdate(benchmark::State& state) {
  const WorldState w = Household();
  Belief b = UniformBelief(w);
  OperatorRng rng(2);
  const RationalityModel model;
  for (auto _ : state) {
    const Vec3 v = SampleDirection({1.0, 0.0, 0.0}, 2.0, rng) * 0.2;
    b = UpdateBelief(b, w, ActionTwist{v, std::nullopt}, model);
    benchmark::DoNotOptimize(AssistAction(b, w));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(b.entries.size()));
}
BENCHMARK(BM_BeliefUpdate);

void BM_SharedEpisodes(benchmark::State& state) {
  const Scenario sc = *ResolveScenario("household15");
  TrialConfig config;
  config.controller = ControllerKind::kShared;
  config.n_trials = static_cast<int>(state.range(0));
  config.workers = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunTrials(sc, config));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SharedEpisodes)->Arg(15)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace riso

BENCHMARK_MAIN();
