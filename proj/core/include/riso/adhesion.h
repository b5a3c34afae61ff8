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

// Mechanics of the pneumatically switchable soft adhesive pad.
//
// The pull-off force of a pad follows the fracture-mechanics scaling
//
//   F_c = sqrt(G_c * A / C)
//
// where A is the true contact area, C the pad compliance in the loading
// direction and G_c the interfacial fracture energy. The pad has three
// pressure states; the state before contact and the state while loaded select
// an AdhesionMode, which in turn selects A, C and G_c:
//
//   NeutralToNegative   flat membrane pressed on, then vacuum (pure adhesion)
//   PositiveToNegative  inflated membrane pressed on, then vacuum (wrapping)
//   PositiveToPositive  membrane stays inflated (release / "off" state)
//
// Scaling prefactors are absorbed into the calibrated constants; see
// Calibrate().
// All quantities are SI.

#ifndef RISO_ADHESION_H_
#define RISO_ADHESION_H_

#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace riso {

// Roughness spacing of an unengraved surface.
inline constexpr double kSmooth = std::numeric_limits<double>::infinity();

// Geometry and surface quality of the object face a pad or finger touches.
struct SurfaceDescriptor {
  double contact_radius = 0.0;        // m, > 0
  double curvature = 0.0;             // 1/m, 0 = flat
  double roughness_spacing = kSmooth; // m, engraved-line distance
  double porosity = 0.0;              // open area fraction in [0, 1]
  double mass = 0.0;                  // kg
  double height = 0.0;                // m
};

absl::Status ValidateSurface(const SurfaceDescriptor& surface);

enum class PressureState { kPositive, kNeutral, kNegative };

// Gauge pressure of each state in Pa.
double GaugePressure(PressureState state);
std::string_view ToString(PressureState state);

enum class AdhesionMode {
  kNeutralToNegative,
  kPositiveToNegative,
  kPositiveToPositive,
};

std::string_view ToString(AdhesionMode mode);

// Pressure state the pad must be in when it touches the object.
PressureState StartState(AdhesionMode mode);

// Calibrated constants of one soft pad.
struct AdhesiveParams {
  double g_c_adhesion = 0.0;  // J/m^2, NeutralToNegative
  double g_c_wrapping = 0.0;  // J/m^2, PositiveToNegative
  double g_c_off = 0.0;       // J/m^2, PositiveToPositive
  double c_negative = 0.0;    // m/N
  double c_neutral = 0.0;     // m/N
  double c_positive = 0.0;    // m/N
  double pad_radius = 0.0;    // m
  double switch_latency = 0.0;  // s

  // Contact-area shape constants.
  double wrap_normal_fraction = 0.0;   // normal contact kept by the dome
  double wrap_side_coefficient = 0.0;  // side contact per unit wall area
  double apex_fraction = 0.0;          // off-state patch / pad face area
  double roughness_scale = 0.0;        // m, spacing at which rho = 1/2
  double pore_flaw_exponent = 0.0;     // G_c knock-down (1 - porosity)^k
};

absl::Status ValidateParams(const AdhesiveParams& params);

// Published operating points the constants are fitted to.
struct CalibrationAnchors {
  double reference_radius = 12.5e-3;  // smooth flat indenter, m
  double force_adhesion = 18.0;       // N, NeutralToNegative
  double force_wrapping = 50.0;       // N, PositiveToNegative
  double switching_ratio = 187.0;     // wrapping / off
  double g_c_adhesion = 4.2;          // J/m^2
  double g_c_wrapping = 44.7;         // J/m^2

  double pad_radius = 12.5e-3;
  double c_neutral = 2.0e-5;
  double c_positive = 5.0e-5;
  double switch_latency = 0.08;
  double wrap_normal_fraction = 0.25;
  double apex_fraction = 0.05;
  double roughness_scale = 0.5e-3;
  double pore_flaw_exponent = 2.0;
};

// Solves for c_negative, wrap_side_coefficient and g_c_off so that the
// reference indenter reproduces the three anchor forces exactly.
AdhesiveParams Calibrate(const CalibrationAnchors& anchors = {});

// Calibrate() with the default anchors, computed once.
const AdhesiveParams& DefaultAdhesiveParams();

// Roughness factor rho(d) = d / (d + d0); 1 for a smooth surface.
double RoughnessFactor(double spacing, const AdhesiveParams& params);

// Curvature factor kappa = 1 / (1 + curvature * radius).
double CurvatureFactor(double curvature, double radius);

// Depth the object sinks into the inflated membrane.
double EmbedDepth(const SurfaceDescriptor& surface,
                  const AdhesiveParams& params);

double ContactArea(const SurfaceDescriptor& surface, AdhesionMode mode,
                   const AdhesiveParams& params);

double Compliance(const AdhesiveParams& params, AdhesionMode mode);

// Mode fracture energy, reduced by pores acting as interfacial flaws.
double FractureEnergy(const SurfaceDescriptor& surface, AdhesionMode mode,
                      const AdhesiveParams& params);

double ForceCapacity(const SurfaceDescriptor& surface, AdhesionMode mode,
                     const AdhesiveParams& params);

// F_high / F_low with F_low the PositiveToPositive capacity. Fails if
// `on_mode` is the off mode or F_low is zero.
absl::StatusOr<double> SwitchingRatio(const SurfaceDescriptor& surface,
                                      const AdhesiveParams& params,
                                      AdhesionMode on_mode);

struct FitPoint {
  double sqrt_a_over_c = 0.0;  // J^(1/2)
  double f_c = 0.0;            // N
};

struct FitOptions {
  // A single point fixes a through-origin slope; allow it only on request.
  bool allow_single_point = false;
};

// Least-squares through-origin fit of f_c against sqrt(A/C); returns the
// squared slope, which is G_c.
absl::StatusOr<double> FitFractureEnergy(std::span<const FitPoint> points,
                                         const FitOptions& options = {});

struct ForceSample {
  double time = 0.0;          // s
  double displacement = 0.0;  // m, positive into the pad
  double force = 0.0;         // N, compressive positive
};

struct ForceTrace {
  std::vector<ForceSample> samples;
  double f_c = 0.0;  // N, largest tensile magnitude during retraction
};

// Load-controlled indentation test.
struct IndentationProtocol {
  double preload_pressure = 25.0e3;      // Pa over the nominal pad area
  double hold_time = 5.0;                // s
  double speed = 10.0e-3 / 60.0;         // m/s, approach and retraction
  double sample_period = 0.01;           // s
};

// Simulates approach to preload, a hold during which the pressure switch
// happens, and retraction through the loaded compliance until pull-off.
ForceTrace SimulateIndentation(const SurfaceDescriptor& surface,
                               AdhesionMode mode, const AdhesiveParams& params,
                               const IndentationProtocol& protocol = {});

}  // namespace riso

#endif  // RISO_ADHESION_H_
