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

#include "cphase/elements.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "cphase/errors.hpp"

namespace cphase {
namespace {

constexpr double kUnitarityTolerance = 1e-12;

const std::vector<std::pair<ElementKind, std::string_view>>& kind_names() {
  static const std::vector<std::pair<ElementKind, std::string_view>> names{
      {ElementKind::BeamSplitter, "beam_splitter"},
      {ElementKind::PolarizingBeamSplitter, "pbs"},
      {ElementKind::PartiallyPolarizingBeamSplitter, "ppbs"},
      {ElementKind::Filter, "filter"},
      {ElementKind::WavePlate, "wave_plate"},
      {ElementKind::PhaseShift, "phase_shift"},
      {ElementKind::Detector, "detector"},
      {ElementKind::Dump, "dump"},
  };
  return names;
}

void require_ports(const ElementSpec& spec, std::size_t n) {
  if (spec.ports.size() != n) {
    throw ModelError("element '" + spec.name + "' (" + std::string(to_string(spec.kind)) +
                     ") needs " + std::to_string(n) + " port(s), got " +
                     std::to_string(spec.ports.size()));
  }
  if (n == 2 && spec.ports[0] == spec.ports[1]) {
    throw ModelError("element '" + spec.name + "' wires port '" + spec.ports[0] + "' twice");
  }
}

void check_split(const ElementSpec& spec, const SplitAmplitudes& s, char pol) {
  const double dev = std::abs(s.bar * s.bar + s.cross * s.cross - 1.0);
  if (!(dev <= kUnitarityTolerance)) {
    std::ostringstream os;
    os << "element '" << spec.name << "': " << pol << " amplitudes bar=" << s.bar
       << " cross=" << s.cross << " violate bar^2+cross^2=1 (deviation " << dev << ")";
    throw ModelError(os.str());
  }
}

// Two waveguides a, b; modes ordered a:H a:V b:H b:V.
Eigen::MatrixXcd coupler_matrix(const SplitAmplitudes& h, const SplitAmplitudes& v) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  const SplitAmplitudes* s[2] = {&h, &v};
  for (int p = 0; p < 2; ++p) {
    const int a = p, b = 2 + p;
    m(a, a) = s[p]->bar;
    m(b, a) = s[p]->cross;
    m(a, b) = -s[p]->cross;
    m(b, b) = s[p]->bar;
  }
  return m;
}

SplitAmplitudes transmission_split(double t) { return {t, std::sqrt(std::max(0.0, 1.0 - t * t))}; }

}  // namespace

std::string_view to_string(ElementKind kind) {
  for (const auto& [k, n] : kind_names()) {
    if (k == kind) return n;
  }
  return "unknown";
}

ElementKind element_kind_from_string(std::string_view text) {
  for (const auto& [k, n] : kind_names()) {
    if (n == text) return k;
  }
  throw ModelError("unknown element kind '" + std::string(text) + "'");
}

ElementSpec make_beam_splitter(std::string name, std::string a, std::string b,
                               SplitAmplitudes h, SplitAmplitudes v) {
  return {std::move(name), ElementKind::BeamSplitter, {std::move(a), std::move(b)},
          CouplerParams{h, v, std::nullopt}};
}

ElementSpec make_pbs(std::string name, std::string a, std::string b) {
  return {std::move(name), ElementKind::PolarizingBeamSplitter, {std::move(a), std::move(b)},
          CouplerParams{{1.0, 0.0}, {0.0, 1.0}, std::nullopt}};
}

ElementSpec make_ppbs(std::string name, std::string a, std::string b, double bar_v) {
  return {std::move(name), ElementKind::PartiallyPolarizingBeamSplitter,
          {std::move(a), std::move(b)},
          CouplerParams{{1.0, 0.0}, transmission_split(bar_v), std::nullopt}};
}

ElementSpec make_filter(std::string name, std::string port, double transmission_h,
                        double transmission_v) {
  return {std::move(name), ElementKind::Filter, {std::move(port)},
          FilterParams{transmission_h, transmission_v, std::nullopt}};
}

ElementSpec make_wave_plate(std::string name, std::string port, const Eigen::Matrix2cd& matrix,
                            std::string preset) {
  return {std::move(name), ElementKind::WavePlate, {std::move(port)},
          WavePlateParams{matrix, std::move(preset)}};
}

ElementSpec make_phase_shift(std::string name, std::string port, double phase_h,
                             double phase_v) {
  return {std::move(name), ElementKind::PhaseShift, {std::move(port)},
          PhaseShiftParams{phase_h, phase_v}};
}

ElementSpec make_detector(std::string name, std::string port, double efficiency) {
  return {std::move(name), ElementKind::Detector, {std::move(port)}, DetectorParams{efficiency}};
}

ElementSpec make_dump(std::string name, std::string port) {
  return {std::move(name), ElementKind::Dump, {std::move(port)}, DumpParams{}};
}

namespace presets {

Eigen::Matrix2cd hwp1() {
  const double s3 = std::sqrt(3.0) / 2.0;
  Eigen::Matrix2cd m;
  m << -s3, 0.5,
       0.5, s3;
  return m;
}

Eigen::Matrix2cd hwp23() {
  const double s = std::numbers::sqrt2 / 2.0;
  Eigen::Matrix2cd m;
  m << s, s,
       s, -s;
  return m;
}

Eigen::Matrix2cd half_wave_plate(double angle_rad) {
  const double c = std::cos(2.0 * angle_rad), s = std::sin(2.0 * angle_rad);
  Eigen::Matrix2cd m;
  m << c, s,
       s, -c;
  return m;
}

Eigen::Matrix2cd by_name(std::string_view name) {
  if (name == "HWP1") return hwp1();
  if (name == "HWP23" || name == "HWP2" || name == "HWP3") return hwp23();
  throw ModelError("unknown wave-plate preset '" + std::string(name) + "'");
}

}  // namespace presets

std::string loss_port_name(const ElementSpec& spec) { return spec.name + ".loss"; }

std::optional<std::string> loss_port(const ElementSpec& spec) {
  if (spec.kind == ElementKind::Filter) return loss_port_name(spec);
  if (spec.kind == ElementKind::Detector) {
    if (std::get<DetectorParams>(spec.params).efficiency < 1.0) return loss_port_name(spec);
  }
  return std::nullopt;
}

bool is_coupler_based(const ElementSpec& spec) {
  return std::holds_alternative<CouplerParams>(spec.params) ||
         std::holds_alternative<FilterParams>(spec.params);
}

std::optional<double> fabricated_length(const ElementSpec& spec) {
  if (auto* c = std::get_if<CouplerParams>(&spec.params)) return c->length_um;
  if (auto* f = std::get_if<FilterParams>(&spec.params)) return f->length_um;
  return std::nullopt;
}

SplitAmplitudes split_amplitudes(const ElementSpec& spec, Polarization pol) {
  if (auto* c = std::get_if<CouplerParams>(&spec.params)) {
    return pol == Polarization::H ? c->h : c->v;
  }
  if (auto* f = std::get_if<FilterParams>(&spec.params)) {
    return transmission_split(pol == Polarization::H ? f->transmission_h : f->transmission_v);
  }
  throw ModelError("element '" + spec.name + "' is not coupler-based");
}

std::vector<Mode> element_modes(const ElementSpec& spec) {
  std::vector<std::string> ports = spec.ports;
  if (auto lp = loss_port(spec)) ports.push_back(*lp);
  return ModeSpace::from_ports(ports).modes();
}

double ElementMatrix::isometry_deviation() const {
  const Eigen::MatrixXcd g = matrix.adjoint() * matrix;
  return (g - Eigen::MatrixXcd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

ElementMatrix build_element(const ElementSpec& spec) {
  if (spec.name.empty()) throw ModelError("element without a name");
  ElementMatrix out;
  out.name = spec.name;

  switch (spec.kind) {
    case ElementKind::BeamSplitter:
    case ElementKind::PolarizingBeamSplitter:
    case ElementKind::PartiallyPolarizingBeamSplitter: {
      require_ports(spec, 2);
      const auto* c = std::get_if<CouplerParams>(&spec.params);
      if (!c) throw ModelError("element '" + spec.name + "' lacks coupler parameters");
      check_split(spec, c->h, 'H');
      check_split(spec, c->v, 'V');
      out.matrix = coupler_matrix(c->h, c->v);
      break;
    }
    case ElementKind::Filter: {
      require_ports(spec, 1);
      const auto* f = std::get_if<FilterParams>(&spec.params);
      if (!f) throw ModelError("element '" + spec.name + "' lacks filter parameters");
      for (double t : {f->transmission_h, f->transmission_v}) {
        if (!(t >= 0.0 && t <= 1.0)) {
          throw ModelError("filter '" + spec.name + "': transmission amplitude " +
                           std::to_string(t) + " outside [0,1]");
        }
      }
      out.matrix = coupler_matrix(transmission_split(f->transmission_h),
                                  transmission_split(f->transmission_v));
      break;
    }
    case ElementKind::WavePlate: {
      require_ports(spec, 1);
      const auto* w = std::get_if<WavePlateParams>(&spec.params);
      if (!w) throw ModelError("element '" + spec.name + "' lacks wave-plate parameters");
      const double dev =
          (w->matrix.adjoint() * w->matrix - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
      if (!(dev <= kUnitarityTolerance)) {
        std::ostringstream os;
        os << "wave plate '" << spec.name << "' is not unitary (max |M^dag M - I| = " << dev
           << ")";
        throw ModelError(os.str());
      }
      out.matrix = w->matrix;
      break;
    }
    case ElementKind::PhaseShift: {
      require_ports(spec, 1);
      const auto* p = std::get_if<PhaseShiftParams>(&spec.params);
      if (!p) throw ModelError("element '" + spec.name + "' lacks phase parameters");
      out.matrix = Eigen::MatrixXcd::Zero(2, 2);
      out.matrix(0, 0) = std::polar(1.0, p->phase_h);
      out.matrix(1, 1) = std::polar(1.0, p->phase_v);
      break;
    }
    case ElementKind::Detector: {
      require_ports(spec, 1);
      const auto* d = std::get_if<DetectorParams>(&spec.params);
      if (!d) throw ModelError("element '" + spec.name + "' lacks detector parameters");
      if (!(d->efficiency >= 0.0 && d->efficiency <= 1.0)) {
        throw ModelError("detector '" + spec.name + "': efficiency outside [0,1]");
      }
      if (d->efficiency < 1.0) {
        const auto s = transmission_split(std::sqrt(d->efficiency));
        out.matrix = coupler_matrix(s, s);
      } else {
        out.matrix = Eigen::MatrixXcd::Identity(2, 2);
      }
      break;
    }
    case ElementKind::Dump: {
      require_ports(spec, 1);
      out.matrix = Eigen::MatrixXcd::Identity(2, 2);
      break;
    }
  }
  out.inputs = element_modes(spec);
  out.outputs = out.inputs;
  return out;
}

PureState apply_element(const PureState& state, const ElementMatrix& element) {
  if (element.matrix.rows() != static_cast<Eigen::Index>(element.outputs.size()) ||
      element.matrix.cols() != static_cast<Eigen::Index>(element.inputs.size())) {
    throw ModelError("element '" + element.name + "': matrix shape does not match its modes");
  }

  // Extend the space with any mode the element needs that the state lacks.
  ModeSpacePtr space = state.space();
  std::vector<Mode> missing;
  auto note = [&](const Mode& m) {
    if (!space->contains(m) && std::find(missing.begin(), missing.end(), m) == missing.end()) {
      missing.push_back(m);
    }
  };
  for (const auto& m : element.inputs) note(m);
  for (const auto& m : element.outputs) note(m);
  PureState source = state;
  if (!missing.empty()) {
    std::vector<Mode> modes = space->modes();
    modes.insert(modes.end(), missing.begin(), missing.end());
    space = std::make_shared<const ModeSpace>(std::move(modes));
    source = state.embedded(space);
  }

  std::vector<std::size_t> in_idx, out_idx;
  for (const auto& m : element.inputs) in_idx.push_back(space->index_of(m));
  for (const auto& m : element.outputs) out_idx.push_back(space->index_of(m));

  std::vector<double> factorial{1.0};
  auto fact = [&](unsigned n) {
    while (factorial.size() <= n) factorial.push_back(factorial.back() * factorial.size());
    return factorial[n];
  };

  StateBuilder builder(space);
  std::vector<std::size_t> photons;  // element-input column per photon
  std::vector<std::size_t> choice;   // element-output row per photon
  for (const auto& [vec, amp] : source.terms()) {
    photons.clear();
    FockVector rest = vec;
    double in_norm = 1.0;
    for (std::size_t j = 0; j < in_idx.size(); ++j) {
      const unsigned n = vec[in_idx[j]];
      for (unsigned k = 0; k < n; ++k) photons.push_back(j);
      in_norm *= fact(n);
      rest[in_idx[j]] = 0;
    }
    if (photons.empty()) {
      builder.add(vec, amp);
      continue;
    }
    // Occupations of untouched modes contribute their factorials to both
    // the input and output normalisation; only touched modes need care.
    const std::size_t rows = out_idx.size();
    choice.assign(photons.size(), 0);
    while (true) {
      Amplitude coeff = amp / std::sqrt(in_norm);
      for (std::size_t p = 0; p < photons.size() && coeff != Amplitude{}; ++p) {
        coeff *= element.matrix(static_cast<Eigen::Index>(choice[p]),
                                static_cast<Eigen::Index>(photons[p]));
      }
      if (coeff != Amplitude{}) {
        FockVector next = rest;
        double rest_norm = 1.0, out_norm = 1.0;
        for (std::size_t r : out_idx) rest_norm *= fact(next[r]);
        for (std::size_t p = 0; p < photons.size(); ++p) ++next[out_idx[choice[p]]];
        for (std::size_t r : out_idx) out_norm *= fact(next[r]);
        builder.add(std::move(next), coeff * std::sqrt(out_norm / rest_norm));
      }
      std::size_t p = 0;
      while (p < choice.size() && ++choice[p] == rows) choice[p++] = 0;
      if (p == choice.size()) break;
    }
  }
  return std::move(builder).build(state.is_open_system());
}

Eigen::MatrixXcd embed_element(const ElementMatrix& element, const ModeSpace& space) {
  auto resolve = [&](const Mode& m) {
    const auto idx = space.find(m);
    if (!idx) throw ModelError("element '" + element.name + "': unresolved port '" + m.port + "'");
    return static_cast<Eigen::Index>(*idx);
  };
  const auto n = static_cast<Eigen::Index>(space.size());
  Eigen::MatrixXcd full = Eigen::MatrixXcd::Identity(n, n);
  std::vector<Eigen::Index> in, out;
  for (const auto& m : element.inputs) in.push_back(resolve(m));
  for (const auto& m : element.outputs) out.push_back(resolve(m));
  for (std::size_t j = 0; j < in.size(); ++j) {
    full.col(in[j]).setZero();
    for (std::size_t k = 0; k < out.size(); ++k) {
      full(out[k], in[j]) = element.matrix(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j));
    }
  }
  return full;
}

Eigen::MatrixXcd compose_circuit_matrix(const ModeSpace& space,
                                        const std::vector<ElementMatrix>& elements) {
  const auto n = static_cast<Eigen::Index>(space.size());
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Identity(n, n);
  for (const auto& e : elements) total = embed_element(e, space) * total;
  return total;
}

}  // namespace cphase
