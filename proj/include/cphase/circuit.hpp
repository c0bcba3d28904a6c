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

// The programmable controlled-phase gate as a netlist, and the machinery to
// run it heralded and read back the realized two-qubit operator.
//
// Ports are waveguides; elements act on them in place. Loss ports of filters
// are generated from the element name ("F1.loss") and appended after the
// declared ports, so mode order is fixed once the netlist is compiled.

#pragma once

#include <Eigen/Dense>
#include <array>
#include <map>
#include <string>
#include <vector>

#include "cphase/elements.hpp"
#include "cphase/fock.hpp"

namespace cphase {

struct Source {
  std::string port;
  unsigned photons = 1;
};

struct QubitPort {
  std::string input;
  std::string output;
};

/// Where the logical qubits enter and leave. H encodes |0>, V encodes |1>.
struct QubitEncoding {
  QubitPort target;
  QubitPort control;
  std::string program;  // input port of the program photon
};

struct Netlist {
  std::string name;
  std::vector<std::string> ports;
  std::vector<ElementSpec> elements;  // application order
  std::vector<Source> sources;
  HeraldPattern herald;
  QubitEncoding encoding;
};

struct ElementCensus {
  int beam_splitters = 0;
  int pbs = 0;
  int ppbs = 0;
  int filters = 0;
  int wave_plates = 0;
  int phase_shifts = 0;
  int detectors = 0;
  int dumps = 0;
};
ElementCensus census(const Netlist& netlist);

/// The shipped reconstruction of the three-photon gate:
///
///   target  --PBS1--+--F1----------------------------------PBS2-- T_OUT
///                   |                                        |
///   lower           +--HWP1--PPBS--HWP3--PBS3--HWP2----------+-- (dump)
///                             |           |
///   control ------------------+--F2-------|-------------------- C_OUT
///   program ------------------------------+--HWP_D-- detector (V)
///
/// Herald: one photon at T_OUT, one at C_OUT, one in the detector's V mode.
Netlist default_netlist();

/// Checks wiring and element parameters; throws ValidationError.
void validate(const Netlist& netlist);

/// A validated netlist with its mode space and element matrices.
struct CompiledCircuit {
  Netlist netlist;
  ModeSpacePtr space;
  std::vector<ElementMatrix> elements;
};

CompiledCircuit compile(const Netlist& netlist);

/// alpha|0> + beta|1>.
struct QubitAmplitudes {
  Amplitude zero = 1.0;
  Amplitude one = 0.0;
};

/// Program photon prepared as (|0> + e^{i phi}|1>)/sqrt2.
struct ProgramState {
  double phi = 0.0;
};

inline constexpr double kQubitNormTolerance = 1e-12;

/// Three-photon product input over the circuit's mode space. Throws
/// ModelError (with the deviation) on unnormalized qubit amplitudes.
PureState prepare_input(const CompiledCircuit& circuit, const QubitAmplitudes& target,
                        const QubitAmplitudes& control, const ProgramState& program);

/// Every element in order, then the netlist herald.
HeraldOutcome run_heralded(const CompiledCircuit& circuit, const PureState& input);

/// Logical (target ⊗ control) amplitudes of a heralded state, one vector per
/// configuration of the remaining modes. Index = 2*target + control.
std::map<FockVector, Eigen::Vector4cd> read_logical_output(const CompiledCircuit& circuit,
                                                          const PureState& heralded);

struct GateResult {
  /// Heralded, unnormalized operator; column k is the output for basis input
  /// k in the order |00>, |01>, |10>, |11> (target first).
  Eigen::Matrix4cd op = Eigen::Matrix4cd::Zero();
  /// One operator per distinct configuration of the non-output modes; `op` is
  /// the heaviest. The default circuit yields exactly one.
  std::vector<Eigen::Matrix4cd> kraus;
  std::array<double, 4> herald_probability{};
  double phi = 0.0;
  double fidelity = 0.0;

  double max_off_diagonal() const;
  /// arg(op(3,3) / op(0,0)) in [0, 2pi).
  double relative_phase() const;
};

GateResult extract_gate(const CompiledCircuit& circuit, double phi);

/// diag(1, 1, 1, e^{i phi}).
Eigen::Matrix4cd ideal_cphase(double phi);

/// |Tr(A^dag B)|^2 / (Tr(A^dag A) Tr(B^dag B)). Throws ModelError on a zero
/// operand.
double process_fidelity(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace cphase
