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

#include "riso/control.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace riso {
namespace {

constexpr double kPi = std::numbers::pi;

// log of 4 pi sinh(beta) / beta, stable for large beta.
double LogNormalizer(double beta) {
  if (beta < 1e-8) return std::log(4.0 * kPi);
  return std::log(2.0 * kPi) + beta + std::log1p(-std::exp(-2.0 * beta)) -
         std::log(beta);
}

}  // namespace

std::string_view ToString(ControllerKind kind) {
  switch (kind) {
    case ControllerKind::kAutonomous:
      return "autonomous";
    case ControllerKind::kHuman:
      return "human";
    case ControllerKind::kShared:
      return "shared";
  }
  return "unknown";
}

std::optional<ControllerKind> ParseControllerKind(std::string_view text) {
  for (ControllerKind k : {ControllerKind::kAutonomous, ControllerKind::kHuman,
                           ControllerKind::kShared}) {
    if (ToString(k) == text) return k;
  }
  return std::nullopt;
}

double Belief::Sum() const {
  double s = 0.0;
  for (const BeliefEntry& e : entries) s += e.p;
  return s;
}

const BeliefEntry& Belief::Argmax() const {
  return *std::max_element(
      entries.begin(), entries.end(),
      [](const BeliefEntry& a, const BeliefEntry& b) { return a.p < b.p; });
}

double Belief::Confidence() const {
  return entries.empty() ? 0.0 : Argmax().p;
}

double Belief::Get(std::string_view object_id, const GraspType& grasp) const {
  for (const BeliefEntry& e : entries) {
    if (e.object_id == object_id && e.grasp == grasp) return e.p;
  }
  return 0.0;
}

std::vector<GraspType> GraspHypotheses(const WorldState& world) {
  std::vector<GraspType> out{GraspType::Rigid()};
  for (int i = 0; i < world.gripper.n_pads(); ++i) {
    out.push_back(GraspType::Soft(i));
  }
  if (world.multi_object_targets) {
    for (int i = 0; i < world.gripper.n_pads(); ++i) {
      out.push_back(GraspType::RigidSoft(i));
    }
  }
  return out;
}

Belief UniformBelief(const WorldState& world, double epsilon_floor) {
  Belief b;
  b.epsilon_floor = epsilon_floor;
  const std::vector<GraspType> grasps = GraspHypotheses(world);
  for (const WorldObject& obj : world.objects) {
    if (obj.status != ObjectStatus::kOnTable) continue;
    for (const GraspType& g : grasps) b.entries.push_back({obj.id, g, 0.0});
  }
  for (BeliefEntry& e : b.entries) {
    e.p = 1.0 / static_cast<double>(b.entries.size());
  }
  return b;
}

Vec3 GoalPoint(const WorldObject& object) { return object.Top(); }

double Likelihood(const ActionTwist& a_h, const WorldState& world,
                  std::string_view object_id, const GraspType& grasp,
                  const RationalityModel& model) {
  const double uniform = 1.0 / (4.0 * kPi);
  const WorldObject* obj = world.Find(object_id);
  const double speed = Norm(a_h.v);
  if (obj == nullptr || speed == 0.0) return uniform;
  const Vec3 to_goal = GoalPoint(*obj) - GraspPoint(world.gripper, grasp);
  const double dist = Norm(to_goal);
  if (dist == 0.0) return uniform;
  const double cosine = Dot(a_h.v, to_goal) / (speed * dist);
  return std::exp(model.beta * cosine - LogNormalizer(model.beta));
}

void ApplyFloor(Belief& belief) {
  auto& entries = belief.entries;
  const std::size_t n = entries.size();
  if (n == 0) return;
  const double eps = belief.epsilon_floor;
  if (eps * static_cast<double>(n) >= 1.0) {
    for (BeliefEntry& e : entries) e.p = 1.0 / static_cast<double>(n);
    return;
  }
  std::vector<bool> pinned(n, false);
  while (true) {
    double free_sum = 0.0;
    std::size_t n_pinned = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (pinned[i]) {
        ++n_pinned;
      } else {
        free_sum += entries[i].p;
      }
    }
    const double free_mass = 1.0 - eps * static_cast<double>(n_pinned);
    const double scale = free_mass / free_sum;
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!pinned[i] && entries[i].p * scale < eps) {
        pinned[i] = true;
        changed = true;
      }
    }
    if (changed) continue;
    for (std::size_t i = 0; i < n; ++i) {
      entries[i].p = pinned[i] ? eps : entries[i].p * scale;
    }
    return;
  }
}

Belief UpdateBelief(const Belief& b, const WorldState& world,
                    const ActionTwist& a_h, const RationalityModel& model) {
  if (a_h.v == Vec3{} || b.entries.empty()) return b;
  Belief out = b;
  double total = 0.0;
  for (BeliefEntry& e : out.entries) {
    e.p *= Likelihood(a_h, world, e.object_id, e.grasp, model);
    total += e.p;
  }
  if (!(total > 0.0) || !std::isfinite(total)) return b;
  for (BeliefEntry& e : out.entries) e.p /= total;
  ApplyFloor(out);
  return out;
}

Vec3 AssistDisplacement(const Belief& b, const WorldState& world) {
  Vec3 sum;
  for (const BeliefEntry& e : b.entries) {
    const WorldObject* obj = world.Find(e.object_id);
    if (obj == nullptr) continue;
    sum += (GoalPoint(*obj) - GraspPoint(world.gripper, e.grasp)) * e.p;
  }
  return sum;
}

Vec3 ApproachVelocity(const Vec3& from, const Vec3& goal,
                      const AssistParams& params) {
  Vec3 d = goal - from;
  if (d.z < 0.0 && HorizontalNorm(d) > params.align_tolerance) d.z = 0.0;
  return ClampNorm(d * params.gain, kVMax);
}

ActionTwist AssistAction(const Belief& b, const WorldState& world,
                         const AssistParams& params) {
  return ActionTwist{ApproachVelocity({}, AssistDisplacement(b, world), params),
                     std::nullopt};
}

double BlendWeight(const Belief& b, double max_weight) {
  return std::clamp(b.Confidence(), 0.0, max_weight);
}

ActionTwist Blend(const ActionTwist& a_h, const ActionTwist& a_r,
                  const Belief& b, double max_weight) {
  const double alpha = BlendWeight(b, max_weight);
  ActionTwist out;
  out.v = (1.0 - alpha) * a_h.v + alpha * a_r.v;
  out.grasp_cmd = a_h.grasp_cmd ? a_h.grasp_cmd : a_r.grasp_cmd;
  return out;
}

GraspType AutonomousGraspType(const WorldObject& object) {
  return object.surface.height > kRigidHeightThreshold ? GraspType::Rigid()
                                                       : GraspType::Soft(0);
}

std::optional<GraspIntent> ChooseAutonomousTarget(const WorldState& world) {
  const WorldObject* best = nullptr;
  double best_dist = 0.0;
  for (const WorldObject& obj : world.objects) {
    if (obj.status != ObjectStatus::kOnTable) continue;
    const double d = HorizontalNorm(obj.position - world.ee_pose());
    if (best == nullptr || d < best_dist) {
      best = &obj;
      best_dist = d;
    }
  }
  if (best == nullptr) return std::nullopt;
  GraspType g = AutonomousGraspType(*best);
  if (g.UsesPad() && world.gripper.n_pads() == 0) g = GraspType::Rigid();
  return GraspIntent{best->id, g};
}

bool OverBin(const WorldState& world, const WorldObject& held_object) {
  Box inner = world.bin;
  inner.min += Vec3{kBinMargin, kBinMargin, 0.0};
  inner.max -= Vec3{kBinMargin, kBinMargin, 0.0};
  return inner.ContainsXY(held_object.position);
}

std::optional<GraspCommand> AutoPressure(const WorldState& world,
                                         const GraspIntent& intent) {
  if (!intent.grasp.UsesPad()) return std::nullopt;
  const GripperState& g = world.gripper;
  const int pad = intent.grasp.pad;
  if (pad < 0 || pad >= g.n_pads()) return std::nullopt;
  const Pad& p = g.pads[pad];

  if (const HeldBinding* b = g.PadBinding(pad)) {
    const WorldObject* held = world.Find(b->object_id);
    if (held != nullptr && OverBin(world, *held) &&
        p.Commanded() == PressureState::kNegative) {
      return GraspCommand::kPadInflate;
    }
    return std::nullopt;
  }

  const WorldObject* obj = world.Find(intent.object_id);
  if (obj == nullptr || obj->status != ObjectStatus::kOnTable) {
    return std::nullopt;
  }
  if (InPadContact(g, pad, obj->surface, obj->position)) {
    if (p.pressure == PressureState::kPositive && !p.pending) {
      return GraspCommand::kPadVacuum;
    }
    return std::nullopt;
  }
  const double gap = PadFace(g, pad).z - obj->Top().z;
  if (gap > kInflateClearance && p.Commanded() != PressureState::kPositive) {
    return GraspCommand::kPadInflate;
  }
  return std::nullopt;
}

ActionTwist AutonomousPolicy(const WorldState& world) {
  if (world.gripper.held.empty()) {
    const std::optional<GraspIntent> intent = ChooseAutonomousTarget(world);
    if (!intent) return {};
    return AutonomousPolicy(world, *intent);
  }
  return AutonomousPolicy(world, {world.gripper.held.front().object_id,
                                  world.gripper.held.front().grasp});
}

ActionTwist AutonomousPolicy(const WorldState& world,
                             const GraspIntent& intent) {
  const GripperState& g = world.gripper;
  ActionTwist a;

  if (!g.held.empty()) {
    const HeldBinding& b = g.held.front();
    const WorldObject* obj = world.Find(b.object_id);
    if (obj != nullptr && OverBin(world, *obj)) {
      a.grasp_cmd = b.grasp.kind == GraspType::Kind::kRigid
                        ? std::optional(GraspCommand::kOpenRigid)
                        : AutoPressure(world, {b.object_id, b.grasp});
      return a;
    }
    a.v = ApproachVelocity(GraspPoint(g, b.grasp), BinDropPoint(world));
    return a;
  }

  const WorldObject* target = world.Find(intent.object_id);
  if (target == nullptr || target->status != ObjectStatus::kOnTable) return a;
  const WorldObject& obj = *target;
  const Vec3 goal = GoalPoint(obj);

  if (intent.grasp.kind == GraspType::Kind::kRigid) {
    if (g.aperture < g.max_aperture) {
      a.grasp_cmd = GraspCommand::kOpenRigid;
      return a;
    }
    if (Norm(goal - g.pose) <= kContactTolerance &&
        IsStraddling(g, obj.surface, obj.position)) {
      a.grasp_cmd = GraspCommand::kCloseRigid;
      return a;
    }
    a.v = ApproachVelocity(g.pose, goal);
    return a;
  }

  const int pad = intent.grasp.pad;
  const Pad& p = g.pads[pad];
  a.grasp_cmd = AutoPressure(world, intent);
  const Vec3 face = PadFace(g, pad);
  const bool ready = p.Commanded() == PressureState::kPositive ||
                     (p.pending && p.Commanded() == PressureState::kNegative);
  if (InPadContact(g, pad, obj.surface, obj.position)) {
    // Wait for the switch; back off if the pad is not inflated (failed
    // attempt) so it can re-inflate above the object.
    if (!ready) a.v = {0.0, 0.0, kVMax};
    return a;
  }
  if (!ready && face.z - obj.Top().z <= kInflateClearance) {
    a.v = {0.0, 0.0, kVMax};
    return a;
  }
  a.v = ApproachVelocity(face, goal);
  return a;
}

SharedAutonomy::SharedAutonomy(SharedAutonomyParams params)
    : params_(params) {}

void SharedAutonomy::SyncHypotheses(const WorldState& world) {
  const Belief fresh = UniformBelief(world, belief_.epsilon_floor);
  const bool same = fresh.entries.size() == belief_.entries.size() &&
                    std::equal(fresh.entries.begin(), fresh.entries.end(),
                               belief_.entries.begin(),
                               [](const BeliefEntry& a, const BeliefEntry& b) {
                                 return a.object_id == b.object_id &&
                                        a.grasp == b.grasp;
                               });
  if (same) return;
  if (belief_.entries.empty()) {
    belief_ = fresh;
    return;
  }
  // Carry over the mass of surviving hypotheses; new ones start at the floor.
  Belief next = fresh;
  double total = 0.0;
  for (BeliefEntry& e : next.entries) {
    const double old = belief_.Get(e.object_id, e.grasp);
    e.p = old > 0.0 ? old : next.epsilon_floor;
    total += e.p;
  }
  if (total > 0.0) {
    for (BeliefEntry& e : next.entries) e.p /= total;
  }
  ApplyFloor(next);
  belief_ = std::move(next);
}

ActionTwist SharedAutonomy::Act(const WorldState& world,
                                const ActionTwist& a_h) {
  const GripperState& g = world.gripper;
  if (!g.held.empty()) {
    // Carrying: the bin is the only goal, so assist at full authority.
    const HeldBinding& b = g.held.front();
    ActionTwist a_r;
    a_r.v = ApproachVelocity(GraspPoint(g, b.grasp), BinDropPoint(world),
                             params_.assist);
    const WorldObject* obj = world.Find(b.object_id);
    if (b.grasp.UsesPad() && obj != nullptr && OverBin(world, *obj)) {
      a_r.v = {};
      a_r.grasp_cmd = AutoPressure(world, {b.object_id, b.grasp});
    }
    const double alpha = params_.max_assist_weight;
    ActionTwist out;
    out.v = (1.0 - alpha) * a_h.v + alpha * a_r.v;
    out.grasp_cmd = a_h.grasp_cmd ? a_h.grasp_cmd : a_r.grasp_cmd;
    return out;
  }

  SyncHypotheses(world);
  if (belief_.entries.empty()) return a_h;
  belief_ = UpdateBelief(belief_, world, a_h, params_.model);
  const ActionTwist a_r = AssistAction(belief_, world, params_.assist);
  ActionTwist out = Blend(a_h, a_r, belief_, params_.max_assist_weight);
  if (!a_h.grasp_cmd) {
    const BeliefEntry& top = belief_.Argmax();
    if (top.p >= params_.pressure_confidence &&
        top.grasp.kind == GraspType::Kind::kSoft) {
      out.grasp_cmd = AutoPressure(world, {top.object_id, top.grasp});
    }
  }
  return out;
}

}  // namespace riso
