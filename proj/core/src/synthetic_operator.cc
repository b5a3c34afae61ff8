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

#include "riso/synthetic_operator.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "absl/strings/str_cat.h"

namespace riso {
namespace {

constexpr double kStallSpeed = 1e-3;   // m/s
constexpr double kOperatorGain = 2.0;  // 1/s

bool Stopped(const WorldState& world) {
  return Norm(world.ee_vel) < kStallSpeed;
}

ActionTwist Steer(const Vec3& from, const Vec3& goal,
                  const OperatorProfile& profile, OperatorRng& rng) {
  const Vec3 d = goal - from;
  const double dist = Norm(d);
  if (dist < 1e-9) return {};
  const Vec3 dir = SampleDirection(d * (1.0 / dist), profile.beta_h, rng);
  return ActionTwist{dir * OperatorSpeed(dist), std::nullopt};
}

// Carrying `obj` to the bin.
ActionTwist Carry(const WorldState& world, const WorldObject& obj,
                  const OperatorProfile& profile, OperatorRng& rng,
                  bool assisted) {
  const GripperState& g = world.gripper;
  const HeldBinding* binding = g.BindingFor(obj.id);
  const GraspType grasp = binding->grasp;
  if (OverBin(world, obj)) {
    ActionTwist a;
    if (grasp.kind == GraspType::Kind::kRigid) {
      if (g.aperture > 0.0 || g.RigidBinding() != nullptr) {
        a.grasp_cmd = GraspCommand::kOpenRigid;
      }
      return a;
    }
    const Pad& p = g.pads[grasp.pad];
    if (p.Commanded() == PressureState::kNegative &&
        (!assisted || Stopped(world))) {
      a.grasp_cmd = GraspCommand::kPadInflate;
    }
    return a;
  }
  const Vec3 from = GraspPoint(g, grasp);
  const Vec3 goal = BinDropPoint(world);
  if (assisted && Norm(goal - from) <= profile.idle_threshold &&
      !Stopped(world)) {
    return {};
  }
  return Steer(from, goal, profile, rng);
}

}  // namespace

std::uint64_t OperatorRng::Next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double OperatorRng::Uniform() {
  return static_cast<double>(Next() >> 11) * 0x1.0p-53;
}

std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t index) {
  OperatorRng rng(seed ^ (index * 0xd1b54a32d192ed03ULL));
  rng.Next();
  return rng.Next();
}

absl::Status ValidateProfile(const OperatorProfile& profile) {
  if (!(profile.beta_h >= 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("beta_h: must be >= 0, got ", profile.beta_h));
  }
  if (profile.reaction_delay < 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "reaction_delay: must be >= 0, got ", profile.reaction_delay));
  }
  if (!(profile.idle_threshold >= 0.0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "idle_threshold: must be >= 0, got ", profile.idle_threshold));
  }
  return absl::OkStatus();
}

Vec3 SampleDirection(const Vec3& mean, double kappa, OperatorRng& rng) {
  const double u = rng.Uniform();
  const double phi = 2.0 * std::numbers::pi * rng.Uniform();
  if (std::isinf(kappa)) return mean;
  // Cosine to the mean: inverse CDF of the marginal on [-1, 1].
  double w;
  if (kappa < 1e-12) {
    w = 2.0 * u - 1.0;
  } else {
    w = 1.0 + std::log(u + (1.0 - u) * std::exp(-2.0 * kappa)) / kappa;
  }
  w = std::clamp(w, -1.0, 1.0);
  // Orthonormal pair perpendicular to `mean`.
  const Vec3 helper = std::abs(mean.x) < 0.9 ? Vec3{1.0, 0.0, 0.0}
                                             : Vec3{0.0, 1.0, 0.0};
  Vec3 e1 = helper - mean * Dot(helper, mean);
  e1 = e1 * (1.0 / Norm(e1));
  const Vec3 e2{mean.y * e1.z - mean.z * e1.y, mean.z * e1.x - mean.x * e1.z,
                mean.x * e1.y - mean.y * e1.x};
  const double s = std::sqrt(std::max(0.0, 1.0 - w * w));
  return mean * w + (e1 * std::cos(phi) + e2 * std::sin(phi)) * s;
}

double OperatorSpeed(double distance) {
  return std::min(kVMax, kOperatorGain * distance);
}

ActionTwist OperatorAction(const WorldState& world, const GraspIntent& intent,
                           const OperatorProfile& profile, OperatorRng& rng,
                           bool assisted) {
  const WorldObject* obj = world.Find(intent.object_id);
  if (obj == nullptr) return {};
  if (obj->status == ObjectStatus::kHeld) {
    return Carry(world, *obj, profile, rng, assisted);
  }
  if (obj->status != ObjectStatus::kOnTable) return {};

  const GripperState& g = world.gripper;
  const Vec3 goal = GoalPoint(*obj);
  const Vec3 from = GraspPoint(g, intent.grasp);

  if (intent.grasp.kind == GraspType::Kind::kRigid) {
    if (g.aperture < g.max_aperture) {
      ActionTwist a = Steer(from, goal + Vec3{0.0, 0.0, kInflateClearance},
                            profile, rng);
      a.grasp_cmd = GraspCommand::kOpenRigid;
      return a;
    }
    if (IsStraddling(g, obj->surface, obj->position) &&
        Norm(goal - from) <= kStraddleTolerance) {
      return ActionTwist{{}, GraspCommand::kCloseRigid};
    }
  } else {
    const int pad = intent.grasp.pad;
    const Pad& p = g.pads[pad];
    if (InPadContact(g, pad, obj->surface, obj->position)) {
      if (p.pending) return {};
      if (p.pressure == PressureState::kNegative) {
        // The attempt failed; back off and try again.
        return ActionTwist{{0.0, 0.0, kVMax}, std::nullopt};
      }
      if (!assisted || Stopped(world)) {
        return ActionTwist{{}, GraspCommand::kPadVacuum};
      }
      return {};
    }
    const double gap = PadFace(g, pad).z - obj->Top().z;
    if (p.Commanded() == PressureState::kNegative &&
        gap <= kInflateClearance) {
      return ActionTwist{{0.0, 0.0, kVMax}, std::nullopt};
    }
    if (!assisted && gap > kInflateClearance &&
        p.Commanded() != PressureState::kPositive) {
      ActionTwist a = Steer(from, goal, profile, rng);
      a.grasp_cmd = GraspCommand::kPadInflate;
      return a;
    }
  }

  if (assisted && Norm(goal - from) <= profile.idle_threshold &&
      !Stopped(world)) {
    return {};
  }
  return Steer(from, goal, profile, rng);
}

}  // namespace riso
