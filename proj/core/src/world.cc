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

#include <algorithm>
#include <cmath>
#include <variant>

#include "absl/strings/str_cat.h"
#include "absl_compat.h"

namespace riso {
namespace {

void LandObject(WorldState& w, const ObjectId& id) {
  WorldObject* obj = w.Find(id);
  if (obj == nullptr) return;
  if (w.bin.ContainsXY(obj->position)) {
    obj->status = ObjectStatus::kInBin;
    obj->position.z = w.bin.min.z;
  } else {
    obj->status = ObjectStatus::kDropped;
    obj->position.z = 0.0;
  }
}

void ApplyHeld(WorldState& w, WorldObject& obj, const Held& held) {
  w.gripper = Bind(std::move(w.gripper), obj.id, held, obj.surface,
                   obj.position);
  obj.status = ObjectStatus::kHeld;
  obj.grasped_with = held.grasp;
}

void CloseFingers(WorldState& w) {
  if (w.gripper.RigidBinding() != nullptr) return;
  for (WorldObject& obj : w.objects) {
    if (obj.status != ObjectStatus::kOnTable ||
        !IsStraddling(w.gripper, obj.surface, obj.position)) {
      continue;
    }
    absl::StatusOr<GraspOutcome> outcome =
        AttemptRigidGrasp(w.gripper, obj.surface, obj.position);
    if (outcome.ok()) {
      if (const Held* held = std::get_if<Held>(&*outcome)) {
        ApplyHeld(w, obj, *held);
        return;
      }
    }
    break;
  }
  // Closed on nothing, or the object slipped out.
  w.gripper.aperture = 0.0;
}

void TrySoftGrasp(WorldState& w, int pad, AdhesionMode mode) {
  if (w.gripper.PadBinding(pad) != nullptr) return;
  for (WorldObject& obj : w.objects) {
    if (obj.status != ObjectStatus::kOnTable ||
        !InPadContact(w.gripper, pad, obj.surface, obj.position)) {
      continue;
    }
    absl::StatusOr<GraspOutcome> outcome = AttemptSoftGrasp(
        w.gripper, pad, obj.surface, obj.position, mode, w.params);
    if (outcome.ok()) {
      if (const Held* held = std::get_if<Held>(&*outcome)) {
        ApplyHeld(w, obj, *held);
      }
    }
    return;
  }
}

void Dispatch(WorldState& w, GraspCommand cmd) {
  std::optional<PressureState> pad_target;
  switch (cmd) {
    case GraspCommand::kCloseRigid:
      CloseFingers(w);
      return;
    case GraspCommand::kOpenRigid: {
      Released r = OpenFingers(std::move(w.gripper));
      w.gripper = std::move(r.state);
      for (const ObjectId& id : r.objects) LandObject(w, id);
      return;
    }
    case GraspCommand::kPadInflate:
      pad_target = PressureState::kPositive;
      break;
    case GraspCommand::kPadNeutral:
      pad_target = PressureState::kNeutral;
      break;
    case GraspCommand::kPadVacuum:
      pad_target = PressureState::kNegative;
      break;
  }
  for (int i = 0; i < w.gripper.n_pads(); ++i) {
    absl::StatusOr<GripperState> next =
        SetPadState(w.gripper, i, *pad_target, w.time, w.params);
    if (next.ok()) w.gripper = *std::move(next);
  }
}

// Lowest end-effector height allowed at horizontal position `xy` given the
// height the effector is coming from.
double MinHeight(const WorldState& w, const Vec3& from, const Vec3& to) {
  const GripperState& g = w.gripper;
  double z_min = 0.0;
  for (const Pad& pad : g.pads) z_min = std::max(z_min, -pad.offset.z);
  for (const HeldBinding& b : g.held) z_min = std::max(z_min, -b.offset.z);
  for (const WorldObject& obj : w.objects) {
    if (obj.status == ObjectStatus::kHeld) continue;
    const double top = obj.Top().z;
    for (const Pad& pad : g.pads) {
      const Vec3 face = to + pad.offset;
      if (HorizontalNorm(face - obj.position) <= obj.surface.contact_radius &&
          from.z + pad.offset.z >= top - kContactTolerance) {
        z_min = std::max(z_min, top - pad.offset.z);
      }
    }
    // Fingers straddle anything narrower than the aperture.
    if (2.0 * obj.surface.contact_radius > g.aperture &&
        HorizontalNorm(to - obj.position) <= obj.surface.contact_radius &&
        from.z >= top - kContactTolerance) {
      z_min = std::max(z_min, top);
    }
  }
  return z_min;
}

// True if moving a pad from `from` to `to` horizontally would push it
// sideways into an object it is below the top of.
bool SideBlocked(const WorldState& w, const Vec3& from, const Vec3& to) {
  for (const WorldObject& obj : w.objects) {
    if (obj.status == ObjectStatus::kHeld) continue;
    const double top = obj.Top().z;
    const double r = obj.surface.contact_radius;
    for (const Pad& pad : w.gripper.pads) {
      const Vec3 old_face = from + pad.offset;
      const Vec3 new_face = to + pad.offset;
      if (old_face.z < top - kContactTolerance &&
          old_face.z > obj.position.z &&
          HorizontalNorm(old_face - obj.position) > r &&
          HorizontalNorm(new_face - obj.position) <= r) {
        return true;
      }
    }
  }
  return false;
}

}  // namespace

std::string_view ToString(ObjectStatus status) {
  switch (status) {
    case ObjectStatus::kOnTable:
      return "on_table";
    case ObjectStatus::kHeld:
      return "held";
    case ObjectStatus::kInBin:
      return "in_bin";
    case ObjectStatus::kDropped:
      return "dropped";
  }
  return "unknown";
}

std::string_view ToString(GraspCommand command) {
  switch (command) {
    case GraspCommand::kCloseRigid:
      return "close_rigid";
    case GraspCommand::kOpenRigid:
      return "open_rigid";
    case GraspCommand::kPadInflate:
      return "pad_inflate";
    case GraspCommand::kPadNeutral:
      return "pad_neutral";
    case GraspCommand::kPadVacuum:
      return "pad_vacuum";
  }
  return "unknown";
}

std::optional<GraspCommand> ParseGraspCommand(std::string_view text) {
  for (GraspCommand c :
       {GraspCommand::kCloseRigid, GraspCommand::kOpenRigid,
        GraspCommand::kPadInflate, GraspCommand::kPadNeutral,
        GraspCommand::kPadVacuum}) {
    if (ToString(c) == text) return c;
  }
  return std::nullopt;
}

const WorldObject* WorldState::Find(std::string_view id) const {
  for (const WorldObject& obj : objects) {
    if (obj.id == id) return &obj;
  }
  return nullptr;
}

WorldObject* WorldState::Find(std::string_view id) {
  for (WorldObject& obj : objects) {
    if (obj.id == id) return &obj;
  }
  return nullptr;
}

WorldState Step(const WorldState& world, const ActionTwist& action) {
  WorldState w = world;
  if (action.grasp_cmd) Dispatch(w, *action.grasp_cmd);

  const Vec3 from = w.gripper.pose;
  Vec3 to = from + ClampNorm(action.v, kVMax) * kDt;
  if (SideBlocked(w, from, to)) {
    to.x = from.x;
    to.y = from.y;
  }
  to.z = std::max(to.z, MinHeight(w, from, to));

  const Vec3 vel = (to - from) * (1.0 / kDt);
  const double accel_z = (vel.z - w.ee_vel.z) / kDt;
  w.gripper.pose = to;
  w.ee_vel = vel;
  w.trajectory_length += Norm(to - from);
  for (const HeldBinding& b : w.gripper.held) {
    if (WorldObject* obj = w.Find(b.object_id)) obj->position = to + b.offset;
  }

  ++w.step;
  w.time = static_cast<double>(w.step) * kDt;

  PadAdvance advance = AdvancePads(std::move(w.gripper), w.time);
  w.gripper = std::move(advance.state);
  for (const PadTransition& t : advance.transitions) {
    if (t.released) LandObject(w, *t.released);
    if (t.to == PressureState::kNegative) {
      if (t.from == PressureState::kNeutral) {
        TrySoftGrasp(w, t.pad, AdhesionMode::kNeutralToNegative);
      } else if (t.from == PressureState::kPositive) {
        TrySoftGrasp(w, t.pad, AdhesionMode::kPositiveToNegative);
      }
    }
  }

  Released dropped = HoldCheck(std::move(w.gripper), accel_z);
  w.gripper = std::move(dropped.state);
  for (const ObjectId& id : dropped.objects) LandObject(w, id);
  return w;
}

Vec3 BinDropPoint(const WorldState& world) {
  Vec3 p = world.bin.Center();
  p.z = kCarryHeight;
  return p;
}

void EpisodeLog::Start(const WorldState& world) {
  poses.assign(1, world.ee_pose());
  human_input.clear();
}

void EpisodeLog::Record(const WorldState& world_after,
                        const ActionTwist& human_action) {
  poses.push_back(world_after.ee_pose());
  human_input.push_back(!human_action.IsZero());
}

EpisodeStatus CheckEpisode(const WorldState& world, std::string_view target) {
  const WorldObject* obj = world.Find(target);
  if (obj != nullptr && obj->status == ObjectStatus::kInBin) {
    return EpisodeStatus::kSuccess;
  }
  if (obj != nullptr && obj->status == ObjectStatus::kDropped) {
    return EpisodeStatus::kTargetDropped;
  }
  if (world.step >= kTimeoutSteps) return EpisodeStatus::kTimeout;
  return EpisodeStatus::kRunning;
}

absl::StatusOr<EpisodeResult> ComputeEpisodeResult(const WorldState& world,
                                                   const EpisodeLog& log,
                                                   std::string_view target) {
  const WorldObject* obj = world.Find(target);
  if (obj == nullptr) {
    return absl::NotFoundError(absl::StrCat("unknown target '", ToAbsl(target), "'"));
  }
  EpisodeResult r;
  r.success = obj->status == ObjectStatus::kInBin;
  r.grasp_type_used = obj->grasped_with;
  r.wall_steps = static_cast<std::int64_t>(log.human_input.size());
  r.human_input_steps =
      std::count(log.human_input.begin(), log.human_input.end(), true);
  for (std::size_t i = 1; i < log.poses.size(); ++i) {
    r.trajectory_length += Norm(log.poses[i] - log.poses[i - 1]);
  }
  return r;
}

}  // namespace riso
