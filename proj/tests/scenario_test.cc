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

#include "riso/scenario.h"

#include <algorithm>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

namespace riso {
namespace {

using ::testing::HasSubstr;
using nlohmann::json;

json Minimal() {
  return json::parse(R"({
    "objects": [{"id": "cup", "position": [0.5, 0, 0], "mass_kg": 0.1,
                 "height_m": 0.09, "contact_radius_m": 0.035,
                 "curvature_per_m": 0, "roughness_spacing_m": "smooth",
                 "porosity": 0}],
    "bin": {"min": [0.3, 0.1, 0], "max": [0.6, 0.4, 0.1]},
    "gripper": {"n_pads": 1, "pinch_force_n": 70, "max_aperture_m": 0.08}
  })");
}

std::string Error(const json& doc) {
  absl::StatusOr<Scenario> sc = ParseScenario(doc);
  EXPECT_FALSE(sc.ok());
  return std::string(sc.status().message());
}

TEST(ParseScenarioTest, Minimal) {
  absl::StatusOr<Scenario> sc = ParseScenario(Minimal());
  ASSERT_TRUE(sc.ok()) << sc.status();
  ASSERT_EQ(sc->objects.size(), 1u);
  EXPECT_EQ(sc->objects[0].surface.roughness_spacing, kSmooth);
  EXPECT_EQ(sc->ee_start, kDefaultEeStart);
  EXPECT_FALSE(sc->multi_object_targets);
}

TEST(ParseScenarioTest, EmptyObjectList) {
  json doc = Minimal();
  doc["objects"] = json::array();
  absl::StatusOr<WorldState> w = LoadScenario(doc);
  ASSERT_TRUE(w.ok());
  EXPECT_TRUE(w->objects.empty());
  EXPECT_EQ(w->gripper.n_pads(), 1);
}

TEST(ParseScenarioTest, FieldLevelErrors) {
  json doc = Minimal();
  doc["objects"][0]["porosity"] = 1.3;
  EXPECT_THAT(Error(doc), HasSubstr("objects[0].porosity"));

  doc = Minimal();
  doc["objects"][0].erase("mass_kg");
  EXPECT_THAT(Error(doc), HasSubstr("objects[0].mass_kg: missing"));

  doc = Minimal();
  doc["objects"][0]["colour"] = "red";
  EXPECT_THAT(Error(doc), HasSubstr("objects[0].colour: unknown field"));

  doc = Minimal();
  doc["objects"][0]["roughness_spacing_m"] = "bumpy";
  EXPECT_THAT(Error(doc), HasSubstr("roughness_spacing_m"));

  doc = Minimal();
  doc["bin"]["min"] = {0.7, 0.1, 0.0};
  EXPECT_THAT(Error(doc), HasSubstr("bin"));

  doc = Minimal();
  doc["gripper"]["n_pads"] = -1;
  EXPECT_THAT(Error(doc), HasSubstr("gripper.n_pads"));
}

TEST(ParseScenarioTest, DuplicateIds) {
  json doc = Minimal();
  doc["objects"].push_back(doc["objects"][0]);
  EXPECT_THAT(Error(doc), HasSubstr("duplicate object id 'cup'"));
}

TEST(BundledScenarioTest, Household15) {
  absl::StatusOr<Scenario> sc = ResolveScenario("household15");
  ASSERT_TRUE(sc.ok()) << sc.status();
  EXPECT_EQ(sc->objects.size(), 15u);
  absl::StatusOr<WorldState> w = MakeWorld(*sc, 0);
  ASSERT_TRUE(w.ok());
  for (const WorldObject& o : w->objects) {
    EXPECT_EQ(o.status, ObjectStatus::kOnTable) << o.id;
  }
  const auto heaviest = std::max_element(
      sc->objects.begin(), sc->objects.end(), [](const auto& a, const auto& b) {
        return a.surface.mass < b.surface.mass;
      });
  EXPECT_EQ(heaviest->surface.mass, 2.0);
}

TEST(BundledScenarioTest, ExtendedAddsTinyObject) {
  absl::StatusOr<Scenario> sc = ResolveScenario("household15_extended");
  ASSERT_TRUE(sc.ok()) << sc.status();
  const auto it = std::find_if(
      sc->objects.begin(), sc->objects.end(),
      [](const ScenarioObject& o) { return o.surface.mass == 2e-6; });
  EXPECT_NE(it, sc->objects.end());
}

TEST(BundledScenarioTest, MissingFile) {
  EXPECT_EQ(ResolveScenario("no_such_scenario").status().code(),
            absl::StatusCode::kNotFound);
}

TEST(MakeWorldTest, SubsetKeepsScenarioOrder) {
  const Scenario sc = *ResolveScenario("household15");
  const std::vector<ObjectId> only = {"weight", "cup"};
  absl::StatusOr<WorldState> w = MakeWorld(sc, 9, only);
  ASSERT_TRUE(w.ok());
  ASSERT_EQ(w->objects.size(), 2u);
  EXPECT_EQ(w->objects[0].id, "cup");
  EXPECT_EQ(w->rng_seed, 9u);
  const std::vector<ObjectId> bad = {"unicorn"};
  EXPECT_EQ(MakeWorld(sc, 0, bad).status().code(),
            absl::StatusCode::kNotFound);
}

}  // namespace
}  // namespace riso
