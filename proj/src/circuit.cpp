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

#include "cphase/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "cphase/errors.hpp"

namespace cphase {
namespace {

std::vector<std::string> all_ports(const Netlist& netlist) {
  std::vector<std::string> ports = netlist.ports;
  for (const auto& e : netlist.elements) {
    if (auto lp = loss_port(e)) ports.push_back(*lp);
  }
  return ports;
}

void check_norm(const QubitAmplitudes& q, const char* which) {
  const double dev = std::abs(std::norm(q.zero) + std::norm(q.one) - 1.0);
  if (!(dev <= kQubitNormTolerance)) {
    std::ostringstream os;
    os << which << " qubit amplitudes are not normalized (| |a|^2+|b|^2 - 1 | = " << dev << ")";
    throw ModelError(os.str());
  }
}

PureState single_photon(const std::string& port, const QubitAmplitudes& q) {
  auto space = std::make_shared<const ModeSpace>(ModeSpace::from_ports({port}));
  return PureState::from_terms(space, {{FockVector({1, 0}), q.zero}, {FockVector({0, 1}), q.one}});
}

}  // namespace

ElementCensus census(const Netlist& netlist) {
  ElementCensus c;
  for (const auto& e : netlist.elements) {
    switch (e.kind) {
      case ElementKind::BeamSplitter: ++c.beam_splitters; break;
      case ElementKind::PolarizingBeamSplitter: ++c.pbs; break;
      case ElementKind::PartiallyPolarizingBeamSplitter: ++c.ppbs; break;
      case ElementKind::Filter: ++c.filters; break;
      case ElementKind::WavePlate: ++c.wave_plates; break;
      case ElementKind::PhaseShift: ++c.phase_shifts; break;
      case ElementKind::Detector: ++c.detectors; break;
      case ElementKind::Dump: ++c.dumps; break;
    }
  }
  return c;
}

Netlist default_netlist() {
  Netlist n;
  n.name = "programmable-cphase";
  n.ports = {"target", "lower", "control", "program"};

  auto pbs = [](std::string name, std::string a, std::string b) {
    auto e = make_pbs(std::move(name), std::move(a), std::move(b));
    std::get<CouplerParams>(e.params).length_um = 70.72;
    return e;
  };
  auto ppbs = make_ppbs("PPBS", "lower", "control");
  std::get<CouplerParams>(ppbs.params).length_um = 35.90;
  auto f1 = make_filter("F1", "target", 0.5, 0.5);
  std::get<FilterParams>(f1.params).length_um = 12.00;
  auto f2 = make_filter("F2", "control", 1.0 / std::sqrt(3.0), 1.0);
  std::get<FilterParams>(f2.params).length_um = 83.20;

  n.elements = {
      pbs("PBS1", "target", "lower"),
      f1,
      make_wave_plate("HWP1", "lower", presets::hwp1(), "HWP1"),
      ppbs,
      f2,
      make_wave_plate("HWP3", "lower", presets::hwp23(), "HWP23"),
      pbs("PBS3", "lower", "program"),
      make_wave_plate("HWP2", "lower", presets::hwp23(), "HWP23"),
      pbs("PBS2", "lower", "target"),
      // Diagonal-basis analysis in front of the detector; without it the
      // detector would learn which photon it absorbed.
      make_wave_plate("HWP_D", "program", presets::half_wave_plate(-std::numbers::pi / 8.0),
                      "angle"),
      make_detector("D", "program"),
      make_dump("W", "lower"),
  };
  n.sources = {{"target", 1}, {"control", 1}, {"program", 1}};
  n.herald.constraints = {
      {{{"target", Polarization::H}, {"target", Polarization::V}}, 1},
      {{{"control", Polarization::H}, {"control", Polarization::V}}, 1},
      {{{"program", Polarization::V}}, 1},
  };
  n.encoding = {{"target", "target"}, {"control", "control"}, "program"};
  return n;
}

void validate(const Netlist& netlist) {
  auto fail = [&](const std::string& msg) {
    throw ValidationError("netlist '" + netlist.name + "': " + msg);
  };

  std::set<std::string> declared;
  for (const auto& p : netlist.ports) {
    if (p.empty()) fail("empty port name");
    if (!declared.insert(p).second) fail("port '" + p + "' declared twice");
  }

  std::set<std::string> names;
  std::set<std::string> used;
  for (const auto& e : netlist.elements) {
    if (!names.insert(e.name).second) fail("element name '" + e.name + "' used twice");
    for (const auto& p : e.ports) {
      if (!declared.count(p)) fail("element '" + e.name + "' references undeclared port '" + p + "'");
      used.insert(p);
    }
    try {
      (void)build_element(e);
    } catch (const ModelError& err) {
      fail(err.what());
    }
    if (auto lp = loss_port(e)) {
      if (declared.count(*lp)) fail("declared port '" + *lp + "' collides with a loss port");
    }
  }

  std::set<std::string> source_ports;
  for (const auto& s : netlist.sources) {
    if (!declared.count(s.port)) fail("source on undeclared port '" + s.port + "'");
    if (!source_ports.insert(s.port).second) fail("two sources on port '" + s.port + "'");
    if (s.photons == 0) fail("source on '" + s.port + "' carries no photons");
    used.insert(s.port);
  }

  const auto space = ModeSpace::from_ports(all_ports(netlist));
  for (const auto& c : netlist.herald.constraints) {
    if (c.modes.empty()) fail("herald constraint without modes");
    for (const auto& m : c.modes) {
      if (!space.contains(m)) fail("herald references unknown mode " + to_string(m));
      used.insert(m.port);
    }
  }

  const auto& enc = netlist.encoding;
  for (const auto* p : {&enc.target.input, &enc.control.input, &enc.program}) {
    if (!source_ports.count(*p)) fail("encoding port '" + *p + "' is not a source");
  }
  if (enc.target.input == enc.control.input || enc.target.input == enc.program ||
      enc.control.input == enc.program) {
    fail("target, control and program must enter on distinct ports");
  }
  for (const auto* p : {&enc.target.output, &enc.control.output}) {
    if (!declared.count(*p)) fail("encoding output '" + *p + "' is not a declared port");
  }
  if (enc.target.output == enc.control.output) fail("target and control share an output port");

  for (const auto& p : netlist.ports) {
    if (!used.count(p)) fail("port '" + p + "' is not wired to anything");
  }
}

CompiledCircuit compile(const Netlist& netlist) {
  validate(netlist);
  CompiledCircuit c;
  c.netlist = netlist;
  c.space = std::make_shared<const ModeSpace>(ModeSpace::from_ports(all_ports(netlist)));
  c.elements.reserve(netlist.elements.size());
  for (const auto& e : netlist.elements) c.elements.push_back(build_element(e));
  return c;
}

PureState prepare_input(const CompiledCircuit& circuit, const QubitAmplitudes& target,
                        const QubitAmplitudes& control, const ProgramState& program) {
  check_norm(target, "target");
  check_norm(control, "control");
  const double s = std::numbers::sqrt2 / 2.0;
  const QubitAmplitudes prog{s, std::polar(s, program.phi)};
  const auto& enc = circuit.netlist.encoding;
  const auto joint = tensor(tensor(single_photon(enc.target.input, target),
                                   single_photon(enc.control.input, control)),
                            single_photon(enc.program, prog));
  return joint.embedded(circuit.space);
}

HeraldOutcome run_heralded(const CompiledCircuit& circuit, const PureState& input) {
  PureState state = input.embedded(circuit.space);
  for (const auto& e : circuit.elements) state = apply_element(state, e);
  return project_herald(state, circuit.netlist.herald);
}

std::map<FockVector, Eigen::Vector4cd> read_logical_output(const CompiledCircuit& circuit,
                                                          const PureState& heralded) {
  const auto& space = *heralded.space();
  const auto& enc = circuit.netlist.encoding;
  const std::size_t th = space.index_of({enc.target.output, Polarization::H});
  const std::size_t tv = space.index_of({enc.target.output, Polarization::V});
  const std::size_t ch = space.index_of({enc.control.output, Polarization::H});
  const std::size_t cv = space.index_of({enc.control.output, Polarization::V});

  std::map<FockVector, Eigen::Vector4cd> out;
  for (const auto& [vec, amp] : heralded.terms()) {
    if (vec[th] + vec[tv] != 1 || vec[ch] + vec[cv] != 1) continue;
    const int idx = 2 * vec[tv] + vec[cv];
    FockVector env = vec;
    env[th] = env[tv] = env[ch] = env[cv] = 0;
    auto [it, inserted] = out.try_emplace(std::move(env), Eigen::Vector4cd::Zero());
    it->second(idx) += amp;
  }
  return out;
}

double GateResult::max_off_diagonal() const {
  double m = 0.0;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      if (r != c) m = std::max(m, std::abs(op(r, c)));
    }
  }
  return m;
}

double GateResult::relative_phase() const {
  double a = std::arg(op(3, 3) / op(0, 0));
  if (a < 0) a += 2.0 * std::numbers::pi;
  return a;
}

GateResult extract_gate(const CompiledCircuit& circuit, double phi) {
  GateResult result;
  result.phi = phi;
  std::map<FockVector, Eigen::Matrix4cd> by_env;
  for (int k = 0; k < 4; ++k) {
    const QubitAmplitudes t = (k & 2) ? QubitAmplitudes{0.0, 1.0} : QubitAmplitudes{1.0, 0.0};
    const QubitAmplitudes c = (k & 1) ? QubitAmplitudes{0.0, 1.0} : QubitAmplitudes{1.0, 0.0};
    const auto outcome = run_heralded(circuit, prepare_input(circuit, t, c, ProgramState{phi}));
    result.herald_probability[static_cast<std::size_t>(k)] = outcome.probability;
    for (const auto& [env, vec] : read_logical_output(circuit, outcome.state)) {
      auto [it, inserted] = by_env.try_emplace(env, Eigen::Matrix4cd::Zero());
      it->second.col(k) = vec;
    }
  }

  double best = -1.0;
  for (const auto& [env, m] : by_env) {
    result.kraus.push_back(m);
    if (m.squaredNorm() > best) {
      best = m.squaredNorm();
      result.op = m;
    }
  }

  const Eigen::Matrix4cd ideal = ideal_cphase(phi);
  double overlap = 0.0, weight = 0.0;
  for (const auto& m : result.kraus) {
    overlap += std::norm((m.adjoint() * ideal).trace());
    weight += m.squaredNorm();
  }
  result.fidelity = weight > 0.0 ? overlap / (weight * ideal.squaredNorm()) : 0.0;
  return result;
}

Eigen::Matrix4cd ideal_cphase(double phi) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
  m(3, 3) = std::polar(1.0, phi);
  return m;
}

double process_fidelity(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ModelError("process_fidelity: operand shapes differ");
  }
  const double na = a.squaredNorm(), nb = b.squaredNorm();
  if (na == 0.0 || nb == 0.0) throw ModelError("process_fidelity: zero operator");
  return std::norm((a.adjoint() * b).trace()) / (na * nb);
}

}  // namespace cphase
