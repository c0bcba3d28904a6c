// Copyright 2026 The cphase-workbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Directional-coupler design arithmetic and fabrication-tolerance sweeps.
//
// Power exchange in a coupler follows a pure sinusoid per polarization:
//   cross(L) = sin^2(pi L / beat),  bar(L) = 1 - cross(L)
// with polarization-specific beat lengths (the full power-exchange cycle).

#pragma once

#include <Eigen/Dense>
#include <array>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cphase/circuit.hpp"
#include "cphase/elements.hpp"

namespace cphase {

enum class Dimension { Width = 0, Height = 1, Gap = 2 };
std::string_view to_string(Dimension dim);
Dimension dimension_from_string(std::string_view text);

/// Fabricated-waveguide metadata. Nothing computes from these directly; they
/// document the platform the beat lengths were calibrated for.
struct CouplerGeometry {
  double waveguide_width_nm = 350.0;
  double waveguide_height_nm = 350.0;
  double gap_nm = 250.0;
  double wavelength_um = 1.55;
  double ring_radius_um = 8.00;
  double ring_coupling_um = 108.20;
  double notch_width_nm = 175.0;
  double notch_height_nm = 175.0;
};

/// d(beat)/d(dimension) in um per nm.
struct BeatSensitivity {
  double h = 0.0;
  double v = 0.0;
  bool configured() const { return h != 0.0 || v != 0.0; }
};

struct CouplerPhysics {
  double beat_h_um = 35.80;
  double beat_v_um = 8.32;
  CouplerGeometry geometry;
  std::array<BeatSensitivity, 3> sensitivities{};

  double beat(Polarization pol) const { return pol == Polarization::H ? beat_h_um : beat_v_um; }
  const BeatSensitivity& sensitivity(Dimension dim) const {
    return sensitivities[static_cast<std::size_t>(dim)];
  }
  BeatSensitivity& sensitivity(Dimension dim) {
    return sensitivities[static_cast<std::size_t>(dim)];
  }
};

/// Throws ValidationError on non-positive beat lengths.
void validate(const CouplerPhysics& physics);

/// sin^2(pi L / beat). Throws ModelError for beat <= 0 or L < 0.
double cross_power(double length_um, double beat_um);
double bar_power(double length_um, double beat_um);

struct CouplerTarget {
  double bar_h = 1.0;
  double bar_v = 0.0;
  double weight_h = 1.0;
  double weight_v = 1.0;
};

struct LengthRange {
  double min_um = 0.0;
  double max_um = 0.0;
};

struct LengthSolution {
  double length_um = 0.0;
  double bar_h = 0.0;  // power fractions
  double bar_v = 0.0;
  double residual = 0.0;
};

/// weight_h (bar_h(L) - target_h)^2 + weight_v (bar_v(L) - target_v)^2.
double coupler_residual(const CouplerPhysics& physics, const CouplerTarget& target,
                        double length_um);

inline constexpr double kDefaultScanStepUm = 0.01;

/// The `count` best local minima of the residual over `range`: a dense scan
/// (step <= 0.01 um) followed by golden-section refinement inside each
/// bracketing grid cell. Ranked by residual, ties to the shorter length.
std::vector<LengthSolution> solve_coupler_length(const CouplerPhysics& physics,
                                                 const CouplerTarget& target, LengthRange range,
                                                 std::size_t count,
                                                 double step_um = kDefaultScanStepUm);

/// Lengths with no V cross-over at all (positive multiples of beat_v).
struct VPerfectLength {
  double length_um = 0.0;
  int cycles = 0;
  double bar_h = 0.0;
};
std::vector<VPerfectLength> enumerate_v_perfect_lengths(const CouplerPhysics& physics,
                                                        LengthRange range);

/// Solver settings for the couplers of the default circuit.
struct DesignPreset {
  std::string element;
  CouplerTarget target;
  LengthRange range;
  double reference_length_um = 0.0;  // as-fabricated length in the default netlist
  bool v_perfect = false;            // also enumerate exact-V lengths
};
DesignPreset design_preset(std::string_view element);
std::vector<std::string> design_preset_names();

// Notched-ring polarization rotators.

struct NotchAnchor {
  double length_um = 0.0;
  Polarization input = Polarization::H;
  double conversion = 0.0;  // power fraction moved to the other polarization
};

struct NotchCalibration {
  std::vector<NotchAnchor> anchors;
  double notch_width_nm = 175.0;
  double notch_height_nm = 175.0;
};

/// (0.75 um, V) -> 1/4, (2.90 um, H) -> 1/2, (2.75 um, V) -> 1/2.
NotchCalibration default_notch_calibration();
void validate(const NotchCalibration& calibration);
/// [shortest, longest] anchored notch length for one input polarization.
std::pair<double, double> notch_span(const NotchCalibration& calibration, Polarization input);

/// Piecewise-linear between anchors of the same input polarization; exact at
/// anchors. Throws ModelError outside the anchored span.
double notch_conversion(const NotchCalibration& calibration, double length_um,
                        Polarization input);

/// [[sqrt(1-c), sqrt(c)], [sqrt(c), -sqrt(1-c)]] in (input, other) order,
/// returned in the (H, V) basis.
Eigen::Matrix2cd rotator_matrix(double conversion, Polarization input);

// Fabrication tolerance.

struct Perturbation {
  Dimension dimension = Dimension::Width;
  double delta_nm = 0.0;
};

inline constexpr double kToleranceWarnNm = 10.0;

struct ElementOverride {
  ElementSpec spec;
  ElementMatrix matrix;
  double bar_power_h = 0.0;
  double bar_power_v = 0.0;
};

struct SynthesisResult {
  std::vector<ElementOverride> overrides;  // netlist order
  std::vector<std::string> warnings;
};

/// Perturbed versions of every coupler-based element with a fabricated
/// length. The nominal element is taken to realize its designed split; the
/// dimension change shifts each beat length by sensitivity * delta and so
/// the accumulated coupling phase by pi L (1/beat' - 1/beat).
///
/// Throws ConfigError when delta != 0 and the dimension has no sensitivity.
SynthesisResult synthesize_imperfect_elements(const Netlist& netlist,
                                              const CouplerPhysics& physics,
                                              const Perturbation& perturbation);

/// Replaces elements by name.
Netlist apply_overrides(Netlist netlist, const std::vector<ElementOverride>& overrides);

struct SweepSpec {
  Dimension dimension = Dimension::Width;
  double from_nm = -10.0;
  double to_nm = 10.0;
  double step_nm = 1.0;
  double phi = std::numbers::pi;
};

struct ElementBarPowers {
  std::string element;
  double bar_h = 0.0;
  double bar_v = 0.0;
};

struct SweepRow {
  double delta_nm = 0.0;
  std::vector<ElementBarPowers> bars;
  std::array<double, 4> herald_probability{};
  double mean_probability = 0.0;
  double fidelity = 0.0;
};

/// Grid points from..to inclusive, evaluated concurrently; rows come back in
/// ascending delta order.
std::vector<SweepRow> tolerance_sweep(const Netlist& netlist, const CouplerPhysics& physics,
                                      const SweepSpec& spec);

}  // namespace cphase
