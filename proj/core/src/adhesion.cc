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

#include "riso/adhesion.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "absl/strings/str_cat.h"

namespace riso {
namespace {

constexpr double kPi = std::numbers::pi;

double EffectiveRadius(const SurfaceDescriptor& surface,
                       const AdhesiveParams& params) {
  return std::min(surface.contact_radius, params.pad_radius);
}

// Radius of the patch an inflated dome touches on a face of radius r.
double ApexRadius(double r, const AdhesiveParams& params) {
  return std::min(r, std::sqrt(params.apex_fraction) * params.pad_radius);
}

double SurfaceQuality(const SurfaceDescriptor& surface,
                      const AdhesiveParams& params) {
  return (1.0 - surface.porosity) *
         RoughnessFactor(surface.roughness_spacing, params);
}

}  // namespace

absl::Status ValidateSurface(const SurfaceDescriptor& surface) {
  if (!(surface.contact_radius > 0.0) ||
      !std::isfinite(surface.contact_radius)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "contact_radius: must be > 0, got ", surface.contact_radius));
  }
  if (!(surface.curvature >= 0.0) || !std::isfinite(surface.curvature)) {
    return absl::InvalidArgumentError(
        absl::StrCat("curvature: must be >= 0, got ", surface.curvature));
  }
  if (!(surface.roughness_spacing > 0.0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "roughness_spacing: must be > 0 or smooth, got ",
        surface.roughness_spacing));
  }
  if (!(surface.porosity >= 0.0 && surface.porosity <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("porosity: must be in [0, 1], got ", surface.porosity));
  }
  if (!(surface.mass >= 0.0) || !std::isfinite(surface.mass)) {
    return absl::InvalidArgumentError(
        absl::StrCat("mass: must be >= 0, got ", surface.mass));
  }
  if (!(surface.height >= 0.0) || !std::isfinite(surface.height)) {
    return absl::InvalidArgumentError(
        absl::StrCat("height: must be >= 0, got ", surface.height));
  }
  return absl::OkStatus();
}

double GaugePressure(PressureState state) {
  switch (state) {
    case PressureState::kPositive:
      return 1.5e3;
    case PressureState::kNeutral:
      return 0.0;
    case PressureState::kNegative:
      return -85.0e3;
  }
  return 0.0;
}

std::string_view ToString(PressureState state) {
  switch (state) {
    case PressureState::kPositive:
      return "positive";
    case PressureState::kNeutral:
      return "neutral";
    case PressureState::kNegative:
      return "negative";
  }
  return "unknown";
}

std::string_view ToString(AdhesionMode mode) {
  switch (mode) {
    case AdhesionMode::kNeutralToNegative:
      return "neutral_to_negative";
    case AdhesionMode::kPositiveToNegative:
      return "positive_to_negative";
    case AdhesionMode::kPositiveToPositive:
      return "positive_to_positive";
  }
  return "unknown";
}

PressureState StartState(AdhesionMode mode) {
  return mode == AdhesionMode::kNeutralToNegative ? PressureState::kNeutral
                                                  : PressureState::kPositive;
}

absl::Status ValidateParams(const AdhesiveParams& p) {
  if (!(p.c_negative > 0.0 && p.c_negative < p.c_neutral &&
        p.c_neutral < p.c_positive)) {
    return absl::InvalidArgumentError(
        "compliances must satisfy 0 < c_negative < c_neutral < c_positive");
  }
  if (!(p.g_c_off > 0.0 && p.g_c_off < p.g_c_adhesion &&
        p.g_c_adhesion < p.g_c_wrapping)) {
    return absl::InvalidArgumentError(
        "fracture energies must satisfy 0 < g_c_off < g_c_adhesion < "
        "g_c_wrapping");
  }
  if (!(p.pad_radius > 0.0)) {
    return absl::InvalidArgumentError("pad_radius must be > 0");
  }
  if (!(p.switch_latency >= 0.0 && p.switch_latency <= 0.1)) {
    return absl::InvalidArgumentError("switch_latency must be in [0, 0.1] s");
  }
  if (!(p.wrap_normal_fraction > 0.0 && p.wrap_normal_fraction <= 1.0) ||
      !(p.wrap_side_coefficient >= 0.0) ||
      !(p.apex_fraction > 0.0 && p.apex_fraction <= 1.0) ||
      !(p.roughness_scale > 0.0) || !(p.pore_flaw_exponent >= 0.0)) {
    return absl::InvalidArgumentError("contact shape constant out of range");
  }
  return absl::OkStatus();
}

AdhesiveParams Calibrate(const CalibrationAnchors& a) {
  AdhesiveParams p;
  p.g_c_adhesion = a.g_c_adhesion;
  p.g_c_wrapping = a.g_c_wrapping;
  p.c_neutral = a.c_neutral;
  p.c_positive = a.c_positive;
  p.pad_radius = a.pad_radius;
  p.switch_latency = a.switch_latency;
  p.wrap_normal_fraction = a.wrap_normal_fraction;
  p.apex_fraction = a.apex_fraction;
  p.roughness_scale = a.roughness_scale;
  p.pore_flaw_exponent = a.pore_flaw_exponent;

  // The reference indenter is smooth, flat, non-porous and taller than the
  // embed cap, so every reduction factor is 1.
  const double r = std::min(a.reference_radius, a.pad_radius);
  const double base_area = kPi * r * r;

  // F^2 = G A / C, solved for the loaded compliance.
  p.c_negative =
      a.g_c_adhesion * base_area / (a.force_adhesion * a.force_adhesion);

  // Same compliance in the wrapping mode; the remaining area must come from
  // the side wall the membrane closes around.
  const double wrap_area =
      a.force_wrapping * a.force_wrapping * p.c_negative / a.g_c_wrapping;
  const double embed = std::min(0.5 * r, 0.5 * a.pad_radius);
  p.wrap_side_coefficient =
      (wrap_area - a.wrap_normal_fraction * base_area) /
      (2.0 * kPi * r * embed);

  const double f_low = a.force_wrapping / a.switching_ratio;
  const double apex = ApexRadius(r, p);
  p.g_c_off = f_low * f_low * p.c_positive / (kPi * apex * apex);
  return p;
}

const AdhesiveParams& DefaultAdhesiveParams() {
  static const AdhesiveParams params = Calibrate();
  return params;
}

double RoughnessFactor(double spacing, const AdhesiveParams& params) {
  if (std::isinf(spacing)) return 1.0;
  return spacing / (spacing + params.roughness_scale);
}

double CurvatureFactor(double curvature, double radius) {
  return 1.0 / (1.0 + curvature * radius);
}

double EmbedDepth(const SurfaceDescriptor& surface,
                  const AdhesiveParams& params) {
  const double r = EffectiveRadius(surface, params);
  return std::min({0.5 * r, 0.5 * params.pad_radius, surface.height});
}

double ContactArea(const SurfaceDescriptor& surface, AdhesionMode mode,
                   const AdhesiveParams& params) {
  const double r = EffectiveRadius(surface, params);
  const double quality = SurfaceQuality(surface, params);
  switch (mode) {
    case AdhesionMode::kNeutralToNegative:
      return kPi * r * r * CurvatureFactor(surface.curvature, r) * quality;
    case AdhesionMode::kPositiveToNegative: {
      const double normal = params.wrap_normal_fraction * kPi * r * r *
                            CurvatureFactor(surface.curvature, r);
      const double side = params.wrap_side_coefficient * 2.0 * kPi * r *
                          EmbedDepth(surface, params);
      return (normal + side) * quality;
    }
    case AdhesionMode::kPositiveToPositive: {
      const double apex = ApexRadius(r, params);
      return kPi * apex * apex * CurvatureFactor(surface.curvature, apex) *
             quality;
    }
  }
  return 0.0;
}

double Compliance(const AdhesiveParams& params, AdhesionMode mode) {
  return mode == AdhesionMode::kPositiveToPositive ? params.c_positive
                                                   : params.c_negative;
}

double FractureEnergy(const SurfaceDescriptor& surface, AdhesionMode mode,
                      const AdhesiveParams& params) {
  double g_c = params.g_c_adhesion;
  if (mode == AdhesionMode::kPositiveToNegative) g_c = params.g_c_wrapping;
  if (mode == AdhesionMode::kPositiveToPositive) g_c = params.g_c_off;
  if (surface.porosity == 0.0) return g_c;
  return g_c * std::pow(1.0 - surface.porosity, params.pore_flaw_exponent);
}

double ForceCapacity(const SurfaceDescriptor& surface, AdhesionMode mode,
                     const AdhesiveParams& params) {
  const double area = ContactArea(surface, mode, params);
  const double g_c = FractureEnergy(surface, mode, params);
  return std::sqrt(g_c * area / Compliance(params, mode));
}

absl::StatusOr<double> SwitchingRatio(const SurfaceDescriptor& surface,
                                      const AdhesiveParams& params,
                                      AdhesionMode on_mode) {
  if (on_mode == AdhesionMode::kPositiveToPositive) {
    return absl::InvalidArgumentError(
        "switching ratio needs an on-state mode");
  }
  const double f_low =
      ForceCapacity(surface, AdhesionMode::kPositiveToPositive, params);
  if (!(f_low > 0.0)) {
    return absl::FailedPreconditionError(
        "off-state capacity is zero; off-state calibration is degenerate");
  }
  return ForceCapacity(surface, on_mode, params) / f_low;
}

absl::StatusOr<double> FitFractureEnergy(std::span<const FitPoint> points,
                                         const FitOptions& options) {
  const std::size_t min_points = options.allow_single_point ? 1 : 2;
  if (points.size() < min_points) {
    return absl::InvalidArgumentError(absl::StrCat(
        "need at least ", min_points, " points, got ", points.size()));
  }
  double sxy = 0.0;
  double sxx = 0.0;
  for (const FitPoint& pt : points) {
    if (!(pt.sqrt_a_over_c > 0.0)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "sqrt_a_over_c must be > 0, got ", pt.sqrt_a_over_c));
    }
    sxy += pt.sqrt_a_over_c * pt.f_c;
    sxx += pt.sqrt_a_over_c * pt.sqrt_a_over_c;
  }
  const double slope = sxy / sxx;
  return slope * slope;
}

ForceTrace SimulateIndentation(const SurfaceDescriptor& surface,
                               AdhesionMode mode, const AdhesiveParams& params,
                               const IndentationProtocol& protocol) {
  const double f_c = ForceCapacity(surface, mode, params);
  const double preload =
      protocol.preload_pressure * kPi * params.pad_radius * params.pad_radius;
  const double loading_compliance =
      mode == AdhesionMode::kNeutralToNegative ? params.c_neutral
                                               : params.c_positive;
  const double loaded_compliance = Compliance(params, mode);
  const double dt = protocol.sample_period;
  const double v = protocol.speed;

  ForceTrace trace;
  auto& s = trace.samples;
  s.push_back({0.0, 0.0, 0.0});

  // Approach: displacement-driven ramp until the preload is reached.
  const double preload_depth = preload * loading_compliance;
  const double approach_time = preload_depth / v;
  for (int i = 1; i * dt < approach_time; ++i) {
    const double t = i * dt;
    s.push_back({t, v * t, v * t / loading_compliance});
  }
  s.push_back({approach_time, preload_depth, preload});

  // Hold at constant load; the pad switches to its loaded state here.
  const double hold_end = approach_time + protocol.hold_time;
  for (int i = 1; approach_time + i * dt < hold_end; ++i) {
    s.push_back({approach_time + i * dt, preload_depth, preload});
  }
  s.push_back({hold_end, preload_depth, preload});

  // Retraction: linear unloading through the stiffened compliance.
  const double pull_off_travel = (preload + f_c) * loaded_compliance;
  const double pull_off_time = pull_off_travel / v;
  for (int i = 1; i * dt < pull_off_time; ++i) {
    const double travel = v * i * dt;
    s.push_back({hold_end + i * dt, preload_depth - travel,
                 std::max(preload - travel / loaded_compliance, -f_c)});
  }
  s.push_back({hold_end + pull_off_time, preload_depth - pull_off_travel,
               -f_c});
  // Detached.
  s.push_back({hold_end + pull_off_time + dt,
               preload_depth - pull_off_travel - v * dt, 0.0});

  double peak = 0.0;
  for (const ForceSample& sample : s) {
    if (sample.time >= hold_end) peak = std::max(peak, -sample.force);
  }
  trace.f_c = peak;
  return trace;
}

}  // namespace riso
