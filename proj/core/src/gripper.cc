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

#include "riso/gripper.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl_compat.h"

namespace riso {
namespace {

bool ValidPad(const GripperState& state, int pad) {
  return pad >= 0 && pad < state.n_pads();
}

double RequiredCapacity(const SurfaceDescriptor& surface) {
  return kSafetyFactor * surface.mass * kGravity;
}

}  // namespace

std::string ToString(const GraspType& grasp) {
  switch (grasp.kind) {
    case GraspType::Kind::kRigid:
      return "rigid";
    case GraspType::Kind::kSoft:
      return absl::StrCat("soft:", grasp.pad);
    case GraspType::Kind::kRigidSoft:
      return absl::StrCat("rigid_soft:", grasp.pad);
  }
  return "unknown";
}

absl::StatusOr<GraspType> ParseGraspType(std::string_view text) {
  if (text == "rigid") return GraspType::Rigid();
  auto parse_pad = [&](std::string_view prefix) -> std::optional<int> {
    if (text.substr(0, prefix.size()) != prefix) return std::nullopt;
    int pad = 0;
    if (!absl::SimpleAtoi(ToAbsl(text.substr(prefix.size())), &pad) || pad < 0) {
      return std::nullopt;
    }
    return pad;
  };
  if (auto pad = parse_pad("soft:")) return GraspType::Soft(*pad);
  if (auto pad = parse_pad("rigid_soft:")) return GraspType::RigidSoft(*pad);
  return absl::InvalidArgumentError(
      absl::StrCat("unknown grasp type '", ToAbsl(text), "'"));
}

const HeldBinding* GripperState::RigidBinding() const {
  for (const HeldBinding& b : held) {
    if (b.grasp.kind == GraspType::Kind::kRigid) return &b;
  }
  return nullptr;
}

const HeldBinding* GripperState::PadBinding(int pad) const {
  for (const HeldBinding& b : held) {
    if (b.grasp.kind == GraspType::Kind::kSoft && b.grasp.pad == pad) {
      return &b;
    }
  }
  return nullptr;
}

const HeldBinding* GripperState::BindingFor(std::string_view object_id) const {
  for (const HeldBinding& b : held) {
    if (b.object_id == object_id) return &b;
  }
  return nullptr;
}

absl::StatusOr<GripperState> MakeGripper(const GripperConfig& config,
                                         const Vec3& pose) {
  if (config.n_pads < 0) {
    return absl::InvalidArgumentError("n_pads must be >= 0");
  }
  if (!(config.pinch_force >= 0.0) || !(config.max_aperture > 0.0)) {
    return absl::InvalidArgumentError(
        "pinch_force must be >= 0 and max_aperture > 0");
  }
  if (!config.pad_offsets.empty() &&
      static_cast<int>(config.pad_offsets.size()) != config.n_pads) {
    return absl::InvalidArgumentError(
        absl::StrCat("pad_offsets has ", config.pad_offsets.size(),
                     " entries for ", config.n_pads, " pads"));
  }
  GripperState state;
  state.pose = pose;
  state.aperture = config.max_aperture;
  state.max_aperture = config.max_aperture;
  state.pinch_force = config.pinch_force;
  state.pads.resize(config.n_pads);
  for (int i = 0; i < config.n_pads; ++i) {
    // Pads sit side by side on the outer finger face.
    state.pads[i].offset = config.pad_offsets.empty()
                               ? Vec3{0.03 * i, 0.05, 0.0}
                               : config.pad_offsets[i];
  }
  return state;
}

Vec3 PadFace(const GripperState& state, int pad) {
  return state.pose + state.pads[pad].offset;
}

Vec3 GraspPoint(const GripperState& state, const GraspType& grasp) {
  switch (grasp.kind) {
    case GraspType::Kind::kRigid:
      return state.pose;
    case GraspType::Kind::kSoft:
      return PadFace(state, grasp.pad);
    case GraspType::Kind::kRigidSoft:
      return 0.5 * (state.pose + PadFace(state, grasp.pad));
  }
  return state.pose;
}

std::optional<double> PadGap(const GripperState& state, int pad,
                             const SurfaceDescriptor& surface,
                             const Vec3& object_position) {
  const Vec3 face = PadFace(state, pad);
  if (HorizontalNorm(face - object_position) > surface.contact_radius) {
    return std::nullopt;
  }
  return face.z - (object_position.z + surface.height);
}

bool InPadContact(const GripperState& state, int pad,
                  const SurfaceDescriptor& surface,
                  const Vec3& object_position) {
  const std::optional<double> gap =
      PadGap(state, pad, surface, object_position);
  return gap && std::abs(*gap) <= kContactTolerance;
}

bool IsStraddling(const GripperState& state, const SurfaceDescriptor& surface,
                  const Vec3& object_position) {
  if (HorizontalNorm(state.pose - object_position) > kStraddleTolerance) {
    return false;
  }
  const double z = state.pose.z - object_position.z;
  return z >= -kContactTolerance && z <= surface.height + kContactTolerance;
}

std::string_view ToString(GraspFailure failure) {
  switch (failure) {
    case GraspFailure::kInsufficientCapacity:
      return "insufficient_capacity";
    case GraspFailure::kTooSmall:
      return "too_small";
    case GraspFailure::kTooWide:
      return "too_wide";
  }
  return "unknown";
}

absl::StatusOr<GripperState> SetPadState(GripperState state, int pad,
                                         PressureState target, double clock,
                                         const AdhesiveParams& params) {
  if (!ValidPad(state, pad)) {
    return absl::OutOfRangeError(absl::StrCat("no pad ", pad));
  }
  Pad& p = state.pads[pad];
  if (p.Commanded() == target) return state;
  if (p.pressure == target) {
    // Switching back before the pending switch completed.
    p.pending.reset();
    return state;
  }
  p.pending = PendingSwitch{target, clock + params.switch_latency};
  return state;
}

PadAdvance AdvancePads(GripperState state, double clock) {
  PadAdvance out;
  // Absorbs rounding in clock arithmetic (clock advances in 0.05 s steps).
  constexpr double kClockSlack = 1e-9;
  for (int i = 0; i < state.n_pads(); ++i) {
    Pad& p = state.pads[i];
    if (!p.pending || p.pending->complete_at > clock + kClockSlack) continue;
    PadTransition t{i, p.pressure, p.pending->target, std::nullopt};
    p.previous = p.pressure;
    p.pressure = p.pending->target;
    p.pending.reset();
    if (t.to != PressureState::kNegative) {
      auto it = std::find_if(
          state.held.begin(), state.held.end(), [i](const HeldBinding& b) {
            return b.grasp.kind == GraspType::Kind::kSoft && b.grasp.pad == i;
          });
      if (it != state.held.end()) {
        t.released = it->object_id;
        state.held.erase(it);
      }
    }
    out.transitions.push_back(std::move(t));
  }
  out.state = std::move(state);
  return out;
}

absl::StatusOr<GraspOutcome> AttemptSoftGrasp(
    const GripperState& state, int pad, const SurfaceDescriptor& surface,
    const Vec3& object_position, AdhesionMode approach,
    const AdhesiveParams& params) {
  if (!ValidPad(state, pad)) {
    return absl::OutOfRangeError(absl::StrCat("no pad ", pad));
  }
  if (approach == AdhesionMode::kPositiveToPositive) {
    return absl::InvalidArgumentError(
        "positive_to_positive is the release state, not a grasp");
  }
  if (state.PadBinding(pad) != nullptr) {
    return absl::FailedPreconditionError(
        absl::StrCat("pad ", pad, " already holds ",
                     state.PadBinding(pad)->object_id));
  }
  const Pad& p = state.pads[pad];
  const PressureState origin =
      p.pressure == PressureState::kNegative ? p.previous : p.pressure;
  if (origin != StartState(approach)) {
    return absl::FailedPreconditionError(
        absl::StrCat("pad ", pad, " started from ", ToAbsl(ToString(origin)),
                     ", ", ToAbsl(ToString(approach)), " needs ",
                     ToAbsl(ToString(StartState(approach)))));
  }
  const std::optional<double> gap =
      PadGap(state, pad, surface, object_position);
  if (!gap || std::abs(*gap) > kContactTolerance) {
    return absl::OutOfRangeError(
        gap ? absl::StrCat("pad ", pad, " is ", *gap * 1e3,
                           " mm from the top face")
            : absl::StrCat("pad ", pad, " is not over the object"));
  }
  const double capacity = ForceCapacity(surface, approach, params);
  if (capacity >= RequiredCapacity(surface)) {
    return GraspOutcome{Held{GraspType::Soft(pad), capacity}};
  }
  return GraspOutcome{Failed{GraspFailure::kInsufficientCapacity}};
}

absl::StatusOr<GraspOutcome> AttemptRigidGrasp(
    const GripperState& state, const SurfaceDescriptor& surface,
    const Vec3& object_position) {
  if (state.RigidBinding() != nullptr) {
    return absl::FailedPreconditionError(absl::StrCat(
        "fingers already hold ", state.RigidBinding()->object_id));
  }
  if (!IsStraddling(state, surface, object_position)) {
    return absl::FailedPreconditionError(
        "fingers do not straddle the object");
  }
  const double width = 2.0 * surface.contact_radius;
  if (width > state.max_aperture) {
    return GraspOutcome{Failed{GraspFailure::kTooWide}};
  }
  if (width < kMinPinchableExtent || surface.height < kMinPinchableExtent) {
    return GraspOutcome{Failed{GraspFailure::kTooSmall}};
  }
  const double capacity = kPinchFriction * state.pinch_force;
  if (capacity >= RequiredCapacity(surface)) {
    return GraspOutcome{Held{GraspType::Rigid(), capacity}};
  }
  return GraspOutcome{Failed{GraspFailure::kInsufficientCapacity}};
}

GripperState Bind(GripperState state, const ObjectId& object_id,
                  const Held& held, const SurfaceDescriptor& surface,
                  const Vec3& object_position) {
  if (held.grasp.kind == GraspType::Kind::kRigid) {
    state.aperture = std::min(state.max_aperture,
                              2.0 * surface.contact_radius);
  }
  state.held.push_back(HeldBinding{object_id, held.grasp, held.capacity,
                                   surface.mass,
                                   object_position - state.pose});
  return state;
}

Released HoldCheck(GripperState state, double vertical_accel) {
  Released out;
  const double g_eff = kGravity + std::abs(vertical_accel);
  std::erase_if(state.held, [&](const HeldBinding& b) {
    if (b.mass * g_eff > b.capacity) {
      out.objects.push_back(b.object_id);
      return true;
    }
    return false;
  });
  out.state = std::move(state);
  return out;
}

Released OpenFingers(GripperState state) {
  Released out;
  state.aperture = state.max_aperture;
  std::erase_if(state.held, [&](const HeldBinding& b) {
    if (b.grasp.kind == GraspType::Kind::kRigid) {
      out.objects.push_back(b.object_id);
      return true;
    }
    return false;
  });
  out.state = std::move(state);
  return out;
}

}  // namespace riso
