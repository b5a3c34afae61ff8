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

// Fixed-timestep tabletop world with a kinematic end effector.
//
// The table is the plane z = 0. Objects rest on it (or in the bin) until a
// gripper binding picks them up; held objects follow the gripper rigidly.
// Released objects land straight below the release point: inside the bin
// region they become InBin, anywhere else Dropped. Pads and fingers cannot
// pass through the top face of an object they are above, which is what lets
// a descending pad come to rest in contact.

#ifndef RISO_WORLD_H_
#define RISO_WORLD_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "riso/adhesion.h"
#include "riso/gripper.h"
#include "riso/vec3.h"

namespace riso {

inline constexpr double kDt = 0.05;            // s, 20 Hz
inline constexpr double kVMax = 0.25;          // m/s
inline constexpr int kTimeoutSteps = 2400;     // 2 simulated minutes
inline constexpr double kCarryHeight = 0.25;   // m, transport altitude

enum class ObjectStatus { kOnTable, kHeld, kInBin, kDropped };

std::string_view ToString(ObjectStatus status);

struct WorldObject {
  ObjectId id;
  Vec3 position;  // centre of the bottom face
  SurfaceDescriptor surface;
  ObjectStatus status = ObjectStatus::kOnTable;
  std::optional<GraspType> grasped_with;

  Vec3 Top() const { return position + Vec3{0.0, 0.0, surface.height}; }
};

// Axis-aligned box.
struct Box {
  Vec3 min;
  Vec3 max;

  bool ContainsXY(const Vec3& p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
  }
  Vec3 Center() const { return 0.5 * (min + max); }
};

enum class GraspCommand {
  kCloseRigid,
  kOpenRigid,
  kPadInflate,
  kPadNeutral,
  kPadVacuum,
};

std::string_view ToString(GraspCommand command);
std::optional<GraspCommand> ParseGraspCommand(std::string_view text);

// End-effector twist plus an optional gripper command. Pad commands address
// every pad.
struct ActionTwist {
  Vec3 v;  // m/s
  std::optional<GraspCommand> grasp_cmd;

  bool IsZero() const { return v == Vec3{} && !grasp_cmd; }
};

struct WorldState {
  double time = 0.0;
  std::int64_t step = 0;
  Vec3 ee_vel;
  GripperState gripper;  // gripper.pose is the end-effector pose
  std::vector<WorldObject> objects;
  Box bin;
  std::uint64_t rng_seed = 0;
  AdhesiveParams params;
  double trajectory_length = 0.0;  // m
  bool multi_object_targets = false;

  const Vec3& ee_pose() const { return gripper.pose; }
  const WorldObject* Find(std::string_view id) const;
  WorldObject* Find(std::string_view id);
};

// Advances the world by kDt. The command is applied at the current pose,
// then the end effector moves by the clamped twist, pending pad switches
// complete, and bindings are checked against the finite-difference vertical
// acceleration.
WorldState Step(const WorldState& world, const ActionTwist& action);

// Point above the bin centre that a held object is carried to.
Vec3 BinDropPoint(const WorldState& world);

// Per-step record needed for episode metrics.
struct EpisodeLog {
  std::vector<Vec3> poses;        // poses[0] is the initial pose
  std::vector<bool> human_input;  // one entry per step

  void Start(const WorldState& world);
  void Record(const WorldState& world_after, const ActionTwist& human_action);
};

enum class EpisodeStatus { kRunning, kSuccess, kTargetDropped, kTimeout };

EpisodeStatus CheckEpisode(const WorldState& world, std::string_view target);

struct EpisodeResult {
  bool success = false;
  std::int64_t human_input_steps = 0;
  double trajectory_length = 0.0;  // m
  std::int64_t wall_steps = 0;
  std::optional<GraspType> grasp_type_used;
};

absl::StatusOr<EpisodeResult> ComputeEpisodeResult(const WorldState& world,
                                                   const EpisodeLog& log,
                                                   std::string_view target);

}  // namespace riso

#endif  // RISO_WORLD_H_
