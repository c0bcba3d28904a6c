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

// Optical element inventory as single-photon mode transformations.
//
// Matrix convention: an ElementMatrix M maps creation operators as
//   a†(in_j) -> sum_k M(k, j) a†(out_k),
// so column j is the image of input mode j. Two-port couplers act per
// polarization as the real rotation
//   a -> t a + r b,   b -> -r a + t b
// where "bar" (t) keeps the photon in its waveguide and "cross" (r) moves it
// to the partner waveguide. One convention is used circuit-wide.

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cphase/fock.hpp"

namespace cphase {

enum class ElementKind {
  BeamSplitter,
  PolarizingBeamSplitter,
  PartiallyPolarizingBeamSplitter,
  Filter,
  WavePlate,
  PhaseShift,
  Detector,
  Dump,
};

/// Netlist spelling: beam_splitter, pbs, ppbs, filter, wave_plate,
/// phase_shift, detector, dump.
std::string_view to_string(ElementKind kind);
ElementKind element_kind_from_string(std::string_view text);

/// Amplitudes for one polarization of a coupler. bar^2 + cross^2 must be 1.
struct SplitAmplitudes {
  double bar = 1.0;
  double cross = 0.0;
};

struct CouplerParams {
  SplitAmplitudes h;
  SplitAmplitudes v;
  std::optional<double> length_um;  // fabricated coupling length, if known
};

/// Amplitude transmissions; the rejected amplitude goes to "<name>.loss".
struct FilterParams {
  double transmission_h = 1.0;
  double transmission_v = 1.0;
  std::optional<double> length_um;
};

/// 2x2 on the port's (H, V) modes, columns are images of H and V.
struct WavePlateParams {
  Eigen::Matrix2cd matrix = Eigen::Matrix2cd::Identity();
  std::string preset;  // informational: "HWP1", "HWP23", "angle", ""
};

struct PhaseShiftParams {
  double phase_h = 0.0;
  double phase_v = 0.0;
};

/// Ideal number-resolving detector on the port's V mode. Efficiency below 1
/// is modelled as a loss coupler ahead of the detector.
struct DetectorParams {
  double efficiency = 1.0;
};

struct DumpParams {};

using ElementParams = std::variant<CouplerParams, FilterParams, WavePlateParams,
                                   PhaseShiftParams, DetectorParams, DumpParams>;

struct ElementSpec {
  std::string name;
  ElementKind kind = ElementKind::Dump;
  std::vector<std::string> ports;
  ElementParams params = DumpParams{};
};

ElementSpec make_beam_splitter(std::string name, std::string a, std::string b,
                               SplitAmplitudes h, SplitAmplitudes v);
/// H bar-passes, V crosses.
ElementSpec make_pbs(std::string name, std::string a, std::string b);
/// H bar amplitude 1; V bar amplitude `bar_v` (1/sqrt(3) by default).
ElementSpec make_ppbs(std::string name, std::string a, std::string b,
                      double bar_v = 0.57735026918962576);
ElementSpec make_filter(std::string name, std::string port, double transmission_h,
                        double transmission_v);
ElementSpec make_wave_plate(std::string name, std::string port, const Eigen::Matrix2cd& matrix,
                            std::string preset = {});
ElementSpec make_phase_shift(std::string name, std::string port, double phase_h, double phase_v);
ElementSpec make_detector(std::string name, std::string port, double efficiency = 1.0);
ElementSpec make_dump(std::string name, std::string port);

namespace presets {
/// |1> -> 1/2 |0> + sqrt(3)/2 |1>; |0> -> -sqrt(3)/2 |0> + 1/2 |1>.
Eigen::Matrix2cd hwp1();
/// Hadamard form: |0> -> (|0>+|1>)/sqrt2, |1> -> (|0>-|1>)/sqrt2.
Eigen::Matrix2cd hwp23();
/// Half-wave plate with fast axis at `angle_rad`:
/// [[cos 2a, sin 2a], [sin 2a, -cos 2a]].
Eigen::Matrix2cd half_wave_plate(double angle_rad);
/// "HWP1" or "HWP23".
Eigen::Matrix2cd by_name(std::string_view name);
}  // namespace presets

/// Name of the auto-generated loss port for filters and lossy detectors.
std::string loss_port_name(const ElementSpec& spec);
std::optional<std::string> loss_port(const ElementSpec& spec);

/// Couplers and filters are directional couplers in hardware.
bool is_coupler_based(const ElementSpec& spec);
std::optional<double> fabricated_length(const ElementSpec& spec);
/// Bar/cross amplitudes of a coupler-based element for one polarization.
SplitAmplitudes split_amplitudes(const ElementSpec& spec, Polarization pol);

/// Every mode the element touches, in the order used by its matrix.
std::vector<Mode> element_modes(const ElementSpec& spec);

struct ElementMatrix {
  std::string name;
  std::vector<Mode> inputs;
  std::vector<Mode> outputs;
  Eigen::MatrixXcd matrix;  // outputs.size() x inputs.size()

  /// max |M^dagger M - I|, zero for an exact isometry.
  double isometry_deviation() const;
};

/// Validates the spec's invariants and returns its mode transformation.
/// Throws ModelError on a non-unitary wave plate (reporting the deviation),
/// a filter amplitude outside [0,1], or an unbalanced coupler.
ElementMatrix build_element(const ElementSpec& spec);

/// Exact bosonic substitution of the element's creation operators. Modes the
/// element needs but the state lacks (loss ports) are appended to the space.
PureState apply_element(const PureState& state, const ElementMatrix& element);

/// The element as a full square matrix over `space`, identity elsewhere.
/// Throws ModelError naming the first port that does not resolve.
Eigen::MatrixXcd embed_element(const ElementMatrix& element, const ModeSpace& space);

/// Product of embedded elements in application order (last applied leftmost).
Eigen::MatrixXcd compose_circuit_matrix(const ModeSpace& space,
                                        const std::vector<ElementMatrix>& elements);

}  // namespace cphase
