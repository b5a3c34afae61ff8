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

// Controllers: autonomous, human pass-through and shared autonomy.
//
// Shared autonomy keeps a belief b(o, g) over which object o the operator
// wants and with which grasp type g. Each non-zero operator input a_h updates
//
//   b'(o, g) ~ P(a_h | s, o, g) * b(o, g)
//
// with a Boltzmann likelihood over input directions, and the robot adds the
// belief-weighted displacement
//
//   a_r = sum_o sum_g (o - s_g) * b(o, g)
//
// where o is the object's top-face centre and s_g the contact point of grasp
// type g. Human and robot commands are then blended by belief confidence.

#ifndef RISO_CONTROL_H_
#define RISO_CONTROL_H_

#include <optional>
#include <string_view>
#include <vector>

#include "riso/world.h"

namespace riso {

inline constexpr double kRigidHeightThreshold = 0.075;  // m, strict >
inline constexpr double kInflateClearance = 0.03;       // m, above the top
inline constexpr double kAlignTolerance = 0.01;         // m, descend-last
inline constexpr double kApproachGain = 4.0;            // 1/s
inline constexpr double kBinMargin = 0.02;              // m

enum class ControllerKind { kAutonomous, kHuman, kShared };

std::string_view ToString(ControllerKind kind);
std::optional<ControllerKind> ParseControllerKind(std::string_view text);

// Noisily-rational operator model; `beta` is the inverse temperature.
struct RationalityModel {
  double beta = 5.0;
};

struct BeliefEntry {
  ObjectId object_id;
  GraspType grasp;
  double p = 0.0;
};

struct Belief {
  std::vector<BeliefEntry> entries;
  double epsilon_floor = 1e-4;

  double Sum() const;
  // Highest-probability entry; the first one on ties. Requires entries.
  const BeliefEntry& Argmax() const;
  double Confidence() const;
  // Probability of (object_id, grasp), 0 if absent.
  double Get(std::string_view object_id, const GraspType& grasp) const;
};

// Grasp types hypothesised for every object: rigid and one soft type per
// pad, plus rigid-soft when the scenario allows multi-object targets.
std::vector<GraspType> GraspHypotheses(const WorldState& world);

// Uniform belief over every OnTable object times GraspHypotheses().
Belief UniformBelief(const WorldState& world, double epsilon_floor = 1e-4);

// Where grasp type g has to bring its contact point: the top-face centre.
Vec3 GoalPoint(const WorldObject& object);

// Density of the operator's input direction on the unit sphere given the
// hypothesis (o, g):
//
//   exp(beta * cos(a_h, o - s_g)) / Z(beta),  Z = 4 pi sinh(beta) / beta
//
// A zero input or a zero displacement carries no information and gets the
// uniform density 1 / (4 pi).
double Likelihood(const ActionTwist& a_h, const WorldState& world,
                  std::string_view object_id, const GraspType& grasp,
                  const RationalityModel& model);

// Raises every entry below the floor to the floor and rescales the rest so
// the total stays 1.
void ApplyFloor(Belief& belief);

// Bayes update with Likelihood(); a zero-velocity input returns `b`.
Belief UpdateBelief(const Belief& b, const WorldState& world,
                    const ActionTwist& a_h, const RationalityModel& model);

// sum_o sum_g (o - s_g) * b(o, g), with no clamping or shaping.
Vec3 AssistDisplacement(const Belief& b, const WorldState& world);

struct AssistParams {
  double gain = kApproachGain;  // 1/s, displacement to velocity
  double align_tolerance = kAlignTolerance;
};

// Velocity toward `goal` for a contact point at `from`: proportional, capped
// at kVMax, and not descending until horizontally within align_tolerance.
Vec3 ApproachVelocity(const Vec3& from, const Vec3& goal,
                      const AssistParams& params = {});

// Assistive twist: gain * AssistDisplacement() with the descend-last rule,
// clamped to kVMax.
ActionTwist AssistAction(const Belief& b, const WorldState& world,
                         const AssistParams& params = {});

// Robot authority: belief confidence clamped to [0, max_weight].
double BlendWeight(const Belief& b, double max_weight = 0.7);

// (1 - alpha) a_h + alpha a_r; a human grasp command always wins.
ActionTwist Blend(const ActionTwist& a_h, const ActionTwist& a_r,
                  const Belief& b, double max_weight = 0.7);

struct GraspIntent {
  ObjectId object_id;
  GraspType grasp;
};

// Grasp type the autonomous policy uses: rigid iff the object is taller than
// kRigidHeightThreshold.
GraspType AutonomousGraspType(const WorldObject& object);

// Nearest OnTable object to the fingertips (horizontal distance).
std::optional<GraspIntent> ChooseAutonomousTarget(const WorldState& world);

// Pad pressure sequencing for a soft intent: inflate while more than
// kInflateClearance above the object, vacuum once in contact with the pad
// inflated, inflate again once the held object is over the bin.
std::optional<GraspCommand> AutoPressure(const WorldState& world,
                                         const GraspIntent& intent);

// True once the held object is inside the bin shrunk by kBinMargin.
bool OverBin(const WorldState& world, const WorldObject& held_object);

// Pick-and-place for the nearest object; zero action once nothing is left.
ActionTwist AutonomousPolicy(const WorldState& world);

// Pick-and-place for `intent` only. Anything already held is carried to the
// bin first.
ActionTwist AutonomousPolicy(const WorldState& world,
                             const GraspIntent& intent);

struct SharedAutonomyParams {
  RationalityModel model;
  AssistParams assist;
  double max_assist_weight = 0.7;
  double pressure_confidence = 0.5;
};

// Stateful shared-autonomy controller; owns the belief.
class SharedAutonomy {
 public:
  explicit SharedAutonomy(SharedAutonomyParams params = {});

  // Updates the belief with `a_h` and returns the blended command.
  ActionTwist Act(const WorldState& world, const ActionTwist& a_h);

  const Belief& belief() const { return belief_; }
  void Reset() { belief_ = {}; }

 private:
  // Keeps the belief over exactly the OnTable objects.
  void SyncHypotheses(const WorldState& world);

  SharedAutonomyParams params_;
  Belief belief_;
};

}  // namespace riso

#endif  // RISO_CONTROL_H_
