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

// Scenario documents (JSON) describing the objects on the table, the bin and
// the gripper. The format is documented in docs/scenario.md.

#ifndef RISO_SCENARIO_H_
#define RISO_SCENARIO_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "riso/world.h"

namespace riso {

inline constexpr Vec3 kDefaultEeStart{0.5, 0.0, 0.3};

struct ScenarioObject {
  ObjectId id;
  Vec3 position;
  SurfaceDescriptor surface;
};

struct Scenario {
  std::string name;
  std::vector<ScenarioObject> objects;
  Box bin;
  GripperConfig gripper;
  Vec3 ee_start = kDefaultEeStart;
  bool multi_object_targets = false;
};

// Validates `document` and converts it. Errors name the offending field,
// e.g. "objects[3].porosity: must be in [0, 1], got 1.3".
absl::StatusOr<Scenario> ParseScenario(const nlohmann::json& document);

absl::StatusOr<Scenario> LoadScenarioFile(const std::filesystem::path& path);

// Accepts a bundled scenario name ("household15") or a file path.
absl::StatusOr<Scenario> ResolveScenario(std::string_view name_or_path);

std::filesystem::path BundledScenarioDir();

// Fresh world with every object OnTable. If `only` is non-empty just those
// objects are placed, in scenario order.
absl::StatusOr<WorldState> MakeWorld(const Scenario& scenario,
                                     std::uint64_t seed,
                                     std::span<const ObjectId> only = {});

// ParseScenario followed by MakeWorld.
absl::StatusOr<WorldState> LoadScenario(const nlohmann::json& document,
                                        std::uint64_t seed = 0);

}  // namespace riso

#endif  // RISO_SCENARIO_H_
