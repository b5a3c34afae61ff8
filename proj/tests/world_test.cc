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

#include "riso/world.h"

#include <random>

#include <gmock/gmock.h>
#include <gtest/gtest.h>
#include "test_util.h"

namespace riso {
namespace {

using testing::SmallWorld;

WorldState TwoObjects() {
  return SmallWorld({{"a", {0.5, -0.2, 0.0}}, {"b", {0.7, -0.2, 0.0}}});
}

bool SameState(const WorldState& x, const WorldState& y) {
  if (x.time != y.time || x.step != y.step || !(x.ee_pose() == y.ee_pose()) ||
      x.trajectory_length != y.trajectory_length ||
      x.objects.size() != y.objects.size() ||
      x.gripper.held.size() != y.gripper.held.size()) {
    return false;
  }
  for (std::size_t i = 0; i < x.objects.size(); ++i) {
    if (!(x.objects[i].position == y.objects[i].position) ||
        x.objects[i].status != y.objects[i].status) {
      return false;
    }
  }
  return true;
}

ActionTwist RandomAction(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> v(-0.3, 0.3);
  std::uniform_int_distribution<int> cmd(0, 9);
  ActionTwist a{{v(rng), v(rng), v(rng)}, std::nullopt};
  const int c = cmd(rng);
  if (c < 5) a.grasp_cmd = static_cast<GraspCommand>(c);
  return a;
}

TEST(StepTest, ZeroTwistOnlyAdvancesTime) {
  const WorldState w0 = TwoObjects();
  const WorldState w1 = Step(w0, {});
  EXPECT_EQ(w1.step, 1);
  EXPECT_DOUBLE_EQ(w1.time, kDt);
  EXPECT_EQ(w1.ee_pose(), w0.ee_pose());
  EXPECT_EQ(w1.trajectory_length, 0.0);
  for (std::size_t i = 0; i < w0.objects.size(); ++i) {
    EXPECT_EQ(w1.objects[i].position, w0.objects[i].position);
  }
}

TEST(StepTest, ConstantVelocityIntegrates) {
  WorldState w = TwoObjects();
  const Vec3 start = w.ee_pose();
  for (int i = 0; i < 10; ++i) w = Step(w, {{0.2, 0.0, 0.0}, std::nullopt});
  EXPECT_NEAR(w.ee_pose().x - start.x, 0.1, 1e-12);
  EXPECT_NEAR(w.trajectory_length, 0.1, 1e-12);
  EXPECT_DOUBLE_EQ(w.time, 10 * kDt);
}

TEST(StepTest, SpeedIsClamped) {
  WorldState w = TwoObjects();
  w = Step(w, {{10.0, 0.0, 0.0}, std::nullopt});
  EXPECT_NEAR(w.trajectory_length, kVMax * kDt, 1e-12);
}

TEST(StepTest, TableIsAFloor) {
  WorldState w = SmallWorld({});
  for (int i = 0; i < 40; ++i) w = Step(w, {{0.0, 0.0, -0.25}, std::nullopt});
  EXPECT_GE(w.ee_pose().z, 0.0);
}

TEST(StepTest, PadRestsOnTopFace) {
  WorldState w = SmallWorld({{"a", {0.5, 0.05, 0.0}}});  // under the pad
  for (int i = 0; i < 40; ++i) w = Step(w, {{0.0, 0.0, -0.25}, std::nullopt});
  const WorldObject& a = w.objects[0];
  EXPECT_NEAR(PadFace(w.gripper, 0).z, a.Top().z, 1e-12);
}

TEST(StepTest, ReplayIsBitIdentical) {
  std::mt19937_64 rng(42);
  std::vector<ActionTwist> actions;
  for (int i = 0; i < 300; ++i) actions.push_back(RandomAction(rng));
  WorldState a = TwoObjects();
  WorldState b = TwoObjects();
  for (const ActionTwist& act : actions) {
    a = Step(a, act);
    b = Step(b, act);
  }
  EXPECT_TRUE(SameState(a, b));
}

TEST(StepTest, InvariantsUnderRandomActions) {
  for (int seed = 0; seed < 5; ++seed) {
    std::mt19937_64 rng(seed);
    WorldState w = TwoObjects();
    double length = 0.0;
    for (int i = 0; i < 400; ++i) {
      w = Step(w, RandomAction(rng));
      ASSERT_GE(w.trajectory_length, length);
      length = w.trajectory_length;
      // Every object has exactly one status, and held ones are bound.
      for (const WorldObject& o : w.objects) {
        const bool bound = w.gripper.BindingFor(o.id) != nullptr;
        ASSERT_EQ(bound, o.status == ObjectStatus::kHeld) << o.id;
      }
      ASSERT_EQ(w.objects.size(), 2u);
    }
  }
}

TEST(StepTest, SoftPickAndDrop) {
  // Object directly under the pad.
  WorldState w = SmallWorld({{"a", {0.45, 0.25, 0.0}}});
  w.gripper.pose = Vec3{0.45, 0.20, 0.1};
  w = Step(w, {{}, GraspCommand::kPadInflate});
  while (PadFace(w.gripper, 0).z > w.objects[0].Top().z + 1e-9) {
    w = Step(w, {{0.0, 0.0, -0.25}, std::nullopt});
  }
  w = Step(w, {{}, GraspCommand::kPadVacuum});
  w = Step(w, {});
  ASSERT_EQ(w.objects[0].status, ObjectStatus::kHeld);
  EXPECT_EQ(w.objects[0].grasped_with, GraspType::Soft(0));
  for (int i = 0; i < 10; ++i) w = Step(w, {{0.0, 0.0, 0.1}, std::nullopt});
  EXPECT_NEAR(w.objects[0].position.z, 0.05, 1e-9);
  w = Step(w, {{}, GraspCommand::kPadInflate});
  w = Step(w, {});
  // The bin spans this position.
  EXPECT_EQ(w.objects[0].status, ObjectStatus::kInBin);
  EXPECT_EQ(CheckEpisode(w, "a"), EpisodeStatus::kSuccess);
}

TEST(StepTest, ReleaseOutsideBinDrops) {
  WorldState w = SmallWorld({{"a", {0.8, -0.2, 0.0}}});
  w.gripper.pose = Vec3{0.8, -0.2, 0.03};
  w = Step(w, {{}, GraspCommand::kCloseRigid});
  ASSERT_EQ(w.objects[0].status, ObjectStatus::kHeld);
  for (int i = 0; i < 5; ++i) w = Step(w, {{0.0, 0.0, 0.2}, std::nullopt});
  w = Step(w, {{}, GraspCommand::kOpenRigid});
  EXPECT_EQ(w.objects[0].status, ObjectStatus::kDropped);
  EXPECT_EQ(w.objects[0].position.z, 0.0);
  EXPECT_EQ(CheckEpisode(w, "a"), EpisodeStatus::kTargetDropped);
  absl::StatusOr<EpisodeResult> r = ComputeEpisodeResult(w, {}, "a");
  ASSERT_TRUE(r.ok());
  EXPECT_FALSE(r->success);
  EXPECT_EQ(r->grasp_type_used, GraspType::Rigid());
}

TEST(EpisodeTest, CountsOnlyNonZeroInputs) {
  std::mt19937_64 rng(3);
  WorldState w = TwoObjects();
  EpisodeLog log;
  log.Start(w);
  int expected_inputs = 0;
  double expected_length = 0.0;
  for (int i = 0; i < 100; ++i) {
    ActionTwist a = (i % 3 == 0) ? ActionTwist{} : RandomAction(rng);
    if (i % 7 == 0) a = ActionTwist{{}, GraspCommand::kPadNeutral};
    const Vec3 before = w.ee_pose();
    w = Step(w, a);
    log.Record(w, a);
    expected_inputs += (a.v == Vec3{} && !a.grasp_cmd) ? 0 : 1;
    expected_length += Norm(w.ee_pose() - before);
  }
  const EpisodeResult r = *ComputeEpisodeResult(w, log, "a");
  EXPECT_EQ(r.human_input_steps, expected_inputs);
  EXPECT_EQ(r.wall_steps, 100);
  EXPECT_NEAR(r.trajectory_length, expected_length, 1e-12);
  EXPECT_EQ(ComputeEpisodeResult(w, log, "nope").status().code(),
            absl::StatusCode::kNotFound);
}

TEST(EpisodeTest, Timeout) {
  WorldState w = TwoObjects();
  w.step = kTimeoutSteps;
  EXPECT_EQ(CheckEpisode(w, "a"), EpisodeStatus::kTimeout);
}

TEST(GraspCommandTest, Names) {
  for (GraspCommand c :
       {GraspCommand::kCloseRigid, GraspCommand::kOpenRigid,
        GraspCommand::kPadInflate, GraspCommand::kPadNeutral,
        GraspCommand::kPadVacuum}) {
    EXPECT_EQ(ParseGraspCommand(ToString(c)), c);
  }
  EXPECT_EQ(ParseGraspCommand("grab"), std::nullopt);
}

}  // namespace
}  // namespace riso
