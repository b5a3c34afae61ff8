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

// Scripted operator used in place of a person at the joystick.
//
// The operator knows which object it wants and how to grasp it. Every tick it
// draws an input direction from the same Boltzmann (von Mises-Fisher) model
// the shared controller assumes, centred on the displacement from the grasp
// point to the goal, and issues grasp and release commands itself.

#ifndef RISO_SYNTHETIC_OPERATOR_H_
#define RISO_SYNTHETIC_OPERATOR_H_

#include <cstdint>

#include "absl/status/status.h"
#include "riso/control.h"
#include "riso/world.h"

namespace riso {

// Small, portable PRNG wrapper. Uniform draws are built from raw 64-bit
// output so streams are identical across standard libraries.
class OperatorRng {
 public:
  explicit OperatorRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t Next();  // splitmix64
  double Uniform();      // [0, 1)

 private:
  std::uint64_t state_;
};

// Stateless seed derivation: the seed for stream `index` under `seed`.
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t index);

struct OperatorProfile {
  double beta_h = 5.0;          // input-direction concentration
  int reaction_delay = 2;       // ticks between decision and effect
  double idle_threshold = 0.05; // m; stop steering this close under assist
};

absl::Status ValidateProfile(const OperatorProfile& profile);

// Unit vector drawn from the density proportional to exp(kappa * <x, mean>)
// on the sphere. kappa = 0 is uniform; kappa = +inf returns `mean`.
// `mean` must be a unit vector.
Vec3 SampleDirection(const Vec3& mean, double kappa, OperatorRng& rng);

// Operator input speed for a remaining distance: slows down near the goal.
double OperatorSpeed(double distance);

// One tick of operator input for `intent`. With `assisted` set the operator
// leaves pad pressure to the controller and goes quiet once within
// idle_threshold of its goal, resuming if the gripper stalls.
ActionTwist OperatorAction(const WorldState& world, const GraspIntent& intent,
                           const OperatorProfile& profile, OperatorRng& rng,
                           bool assisted);

}  // namespace riso

#endif  // RISO_SYNTHETIC_OPERATOR_H_
