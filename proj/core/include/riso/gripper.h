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

// Rigid two-finger pinch with switchable adhesive pads mounted on the
// fingers. The pinch and the pads are independent: each pad owns at most one
// adhesive binding and the fingers own at most one pinch binding, so an
// object can be pinched while another one adheres.

#ifndef RISO_GRIPPER_H_
#define RISO_GRIPPER_H_

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "riso/adhesion.h"
#include "riso/vec3.h"

namespace riso {

inline constexpr double kGravity = 9.81;             // m/s^2
inline constexpr double kPinchFriction = 0.6;        // Coulomb, finger/object
inline constexpr double kSafetyFactor = 1.5;         // required capacity/weight
inline constexpr double kContactTolerance = 2.0e-3;  // m, pad face to top face
inline constexpr double kMinPinchableExtent = 3.0e-3;  // m, width and height
inline constexpr double kStraddleTolerance = 10.0e-3;  // m, finger axis offset

using ObjectId = std::string;

struct GraspType {
  enum class Kind { kRigid, kSoft, kRigidSoft };

  Kind kind = Kind::kRigid;
  int pad = 0;  // ignored for kRigid

  static constexpr GraspType Rigid() { return {Kind::kRigid, 0}; }
  static constexpr GraspType Soft(int pad) { return {Kind::kSoft, pad}; }
  static constexpr GraspType RigidSoft(int pad) {
    return {Kind::kRigidSoft, pad};
  }

  bool UsesPad() const { return kind != Kind::kRigid; }
  bool UsesFingers() const { return kind != Kind::kSoft; }

  friend constexpr auto operator<=>(const GraspType&,
                                    const GraspType&) = default;
};

// "rigid", "soft:<pad>", "rigid_soft:<pad>".
std::string ToString(const GraspType& grasp);
absl::StatusOr<GraspType> ParseGraspType(std::string_view text);

struct PendingSwitch {
  PressureState target = PressureState::kNeutral;
  double complete_at = 0.0;  // s
};

struct Pad {
  PressureState pressure = PressureState::kNeutral;
  // State the pad was in before its last completed switch.
  PressureState previous = PressureState::kNeutral;
  std::optional<PendingSwitch> pending;
  Vec3 offset;  // pad face relative to the fingertip midpoint

  // Pressure the pad is in or is switching to.
  PressureState Commanded() const {
    return pending ? pending->target : pressure;
  }
};

struct HeldBinding {
  ObjectId object_id;
  GraspType grasp;  // kRigid for the fingers, kSoft(pad) for a pad
  double capacity = 0.0;  // N
  double mass = 0.0;      // kg
  Vec3 offset;            // object position minus gripper pose
};

struct GripperConfig {
  int n_pads = 1;
  double pinch_force = 70.0;    // N
  double max_aperture = 0.08;   // m
  std::vector<Vec3> pad_offsets;  // defaults to one pad 5 cm along +y
};

struct GripperState {
  Vec3 pose;  // fingertip midpoint
  double aperture = 0.0;
  double max_aperture = 0.0;
  double pinch_force = 0.0;
  std::vector<Pad> pads;
  std::vector<HeldBinding> held;

  const HeldBinding* RigidBinding() const;
  const HeldBinding* PadBinding(int pad) const;
  const HeldBinding* BindingFor(std::string_view object_id) const;
  int n_pads() const { return static_cast<int>(pads.size()); }
};

absl::StatusOr<GripperState> MakeGripper(const GripperConfig& config,
                                         const Vec3& pose);

// Contact point that grasp type `grasp` brings to the object: fingertip
// midpoint for rigid, pad face for soft, their midpoint for rigid-soft.
Vec3 GraspPoint(const GripperState& state, const GraspType& grasp);
Vec3 PadFace(const GripperState& state, int pad);

// Vertical gap between a pad face and the top face of an object resting at
// `object_position`, or nullopt if the pad is not over the face.
std::optional<double> PadGap(const GripperState& state, int pad,
                             const SurfaceDescriptor& surface,
                             const Vec3& object_position);

bool InPadContact(const GripperState& state, int pad,
                  const SurfaceDescriptor& surface,
                  const Vec3& object_position);

bool IsStraddling(const GripperState& state, const SurfaceDescriptor& surface,
                  const Vec3& object_position);

enum class GraspFailure {
  kInsufficientCapacity,
  kTooSmall,
  kTooWide,
};

std::string_view ToString(GraspFailure failure);

struct Held {
  GraspType grasp;
  double capacity = 0.0;  // N
};

struct Failed {
  GraspFailure reason;
};

using GraspOutcome = std::variant<Held, Failed>;

// Starts a pressure switch of `pad` that completes `switch_latency` after
// `clock`. Commanding the state the pad is already in (or switching to) is a
// no-op.
absl::StatusOr<GripperState> SetPadState(GripperState state, int pad,
                                         PressureState target, double clock,
                                         const AdhesiveParams& params);

struct PadTransition {
  int pad = 0;
  PressureState from = PressureState::kNeutral;
  PressureState to = PressureState::kNeutral;
  std::optional<ObjectId> released;
};

struct PadAdvance {
  GripperState state;
  std::vector<PadTransition> transitions;
};

// Completes every switch due at `clock`. A pad that leaves the negative
// state loses its adhesive binding.
PadAdvance AdvancePads(GripperState state, double clock);

// Adhesive grasp with `pad` on the top face of an object. The outcome is
// Held iff the mode's force capacity covers kSafetyFactor times the weight.
absl::StatusOr<GraspOutcome> AttemptSoftGrasp(
    const GripperState& state, int pad, const SurfaceDescriptor& surface,
    const Vec3& object_position, AdhesionMode approach,
    const AdhesiveParams& params);

// Coulomb pinch: Held iff kPinchFriction * pinch_force covers kSafetyFactor
// times the weight.
absl::StatusOr<GraspOutcome> AttemptRigidGrasp(
    const GripperState& state, const SurfaceDescriptor& surface,
    const Vec3& object_position);

// Records a binding for a Held outcome.
GripperState Bind(GripperState state, const ObjectId& object_id,
                  const Held& held, const SurfaceDescriptor& surface,
                  const Vec3& object_position);

struct Released {
  GripperState state;
  std::vector<ObjectId> objects;
};

// Drops every binding whose capacity no longer covers
// mass * (g + |vertical_accel|).
Released HoldCheck(GripperState state, double vertical_accel);

// Opens the fingers; pad bindings are untouched.
Released OpenFingers(GripperState state);

}  // namespace riso

#endif  // RISO_GRIPPER_H_
