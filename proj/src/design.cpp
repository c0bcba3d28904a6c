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

#include "cphase/design.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>
#include <thread>

#include "cphase/errors.hpp"

namespace cphase {
namespace {

constexpr double kPi = std::numbers::pi;

void check_range(LengthRange range) {
  if (!(range.min_um >= 0.0) || !(range.max_um >= range.min_um) || !std::isfinite(range.max_um)) {
    std::ostringstream os;
    os << "invalid length range [" << range.min_um << ", " << range.max_um << "] um";
    throw ModelError(os.str());
  }
}

LengthSolution evaluate(const CouplerPhysics& p, const CouplerTarget& t, double length) {
  return {length, bar_power(length, p.beat_h_um), bar_power(length, p.beat_v_um),
          coupler_residual(p, t, length)};
}

// Golden-section search for a minimum of the residual on [a, b].
double golden_minimum(const CouplerPhysics& p, const CouplerTarget& t, double a, double b) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = coupler_residual(p, t, c);
  double fd = coupler_residual(p, t, d);
  while (b - a > 1e-10) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = coupler_residual(p, t, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = coupler_residual(p, t, d);
    }
  }
  return (a + b) / 2.0;
}

std::vector<NotchAnchor> anchors_for(const NotchCalibration& cal, Polarization input) {
  std::vector<NotchAnchor> out;
  for (const auto& a : cal.anchors) {
    if (a.input == input) out.push_back(a);
  }
  std::sort(out.begin(), out.end(),
            [](const NotchAnchor& x, const NotchAnchor& y) { return x.length_um < y.length_um; });
  return out;
}

// Same sign as the nominal amplitude, with zero counted as positive.
double signed_like(double nominal, double magnitude) {
  return std::signbit(nominal) ? -magnitude : magnitude;
}

}  // namespace

std::string_view to_string(Dimension dim) {
  switch (dim) {
    case Dimension::Width: return "width";
    case Dimension::Height: return "height";
    case Dimension::Gap: return "gap";
  }
  return "?";
}

Dimension dimension_from_string(std::string_view text) {
  if (text == "width") return Dimension::Width;
  if (text == "height") return Dimension::Height;
  if (text == "gap") return Dimension::Gap;
  throw ConfigError("unknown dimension '" + std::string(text) + "' (expected width, height or gap)");
}

void validate(const CouplerPhysics& physics) {
  for (auto pol : kPolarizations) {
    const double b = physics.beat(pol);
    if (!(b > 0.0) || !std::isfinite(b)) {
      std::ostringstream os;
      os << "beat length for " << to_char(pol) << " must be positive, got " << b;
      throw ValidationError(os.str());
    }
  }
  for (const auto& s : physics.sensitivities) {
    if (!std::isfinite(s.h) || !std::isfinite(s.v)) {
      throw ValidationError("beat-length sensitivities must be finite");
    }
  }
}

double cross_power(double length_um, double beat_um) {
  if (!(beat_um > 0.0)) throw ModelError("beat length must be positive");
  if (!(length_um >= 0.0)) throw ModelError("coupling length must be non-negative");
  const double s = std::sin(kPi * length_um / beat_um);
  return s * s;
}

double bar_power(double length_um, double beat_um) {
  return 1.0 - cross_power(length_um, beat_um);
}

double coupler_residual(const CouplerPhysics& physics, const CouplerTarget& target,
                        double length_um) {
  const double dh = bar_power(length_um, physics.beat_h_um) - target.bar_h;
  const double dv = bar_power(length_um, physics.beat_v_um) - target.bar_v;
  return target.weight_h * dh * dh + target.weight_v * dv * dv;
}

std::vector<LengthSolution> solve_coupler_length(const CouplerPhysics& physics,
                                                 const CouplerTarget& target, LengthRange range,
                                                 std::size_t count, double step_um) {
  validate(physics);
  check_range(range);
  if (!(step_um > 0.0)) throw ModelError("scan step must be positive");
  if (target.weight_h < 0.0 || target.weight_v < 0.0 ||
      target.weight_h + target.weight_v <= 0.0) {
    throw ModelError("residual weights must be non-negative and not both zero");
  }
  if (count == 0) return {};

  const auto n = static_cast<std::size_t>(std::ceil((range.max_um - range.min_um) / step_um - 1e-9));
  std::vector<double> grid(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    grid[i] = std::min(range.min_um + static_cast<double>(i) * step_um, range.max_um);
  }
  std::vector<double> res(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) res[i] = coupler_residual(physics, target, grid[i]);

  std::vector<LengthSolution> found;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    // Strict on the left so a flat run yields one candidate.
    const bool left = i == 0 || res[i] < res[i - 1];
    const bool right = i + 1 == grid.size() || res[i] <= res[i + 1];
    if (!left || !right) continue;
    const double a = grid[i == 0 ? 0 : i - 1];
    const double b = grid[std::min(i + 1, grid.size() - 1)];
    LengthSolution best = evaluate(physics, target, grid[i]);
    if (b > a) {
      const auto refined = evaluate(physics, target, golden_minimum(physics, target, a, b));
      if (refined.residual < best.residual) best = refined;
    }
    found.push_back(best);
  }

  std::sort(found.begin(), found.end(), [](const LengthSolution& x, const LengthSolution& y) {
    if (x.residual != y.residual) return x.residual < y.residual;
    return x.length_um < y.length_um;
  });
  if (found.size() > count) found.resize(count);
  return found;
}

std::vector<VPerfectLength> enumerate_v_perfect_lengths(const CouplerPhysics& physics,
                                                        LengthRange range) {
  validate(physics);
  check_range(range);
  const double bv = physics.beat_v_um;
  const int first = std::max(1, static_cast<int>(std::ceil(range.min_um / bv - 1e-9)));
  const int last = static_cast<int>(std::floor(range.max_um / bv + 1e-9));
  std::vector<VPerfectLength> out;
  for (int k = first; k <= last; ++k) {
    const double len = k * bv;
    out.push_back({len, k, bar_power(len, physics.beat_h_um)});
  }
  return out;
}

DesignPreset design_preset(std::string_view element) {
  DesignPreset p;
  p.element = std::string(element);
  if (element == "pbs") {
    // H must stay put and V must fully cross; a V leak is what breaks the
    // gate, so V dominates the residual.
    p.target = {1.0, 0.0, 1.0, 1e6};
    p.range = {60.0, 80.0};
    p.reference_length_um = 70.72;
  } else if (element == "ppbs") {
    p.target = {1.0, 1.0 / 3.0, 1.0, 1.0};
    p.range = {30.0, 40.0};
    p.reference_length_um = 35.90;
  } else if (element == "f1") {
    // Only H is specified; the V arm is a separate filter section.
    p.target = {0.25, 0.0, 1.0, 0.0};
    p.range = {0.0, 20.0};
    p.reference_length_um = 12.00;
  } else if (element == "f2") {
    p.target = {1.0 / 3.0, 1.0, 1.0, 1.0};
    p.range = {80.0, 90.0};
    p.reference_length_um = 83.20;
    p.v_perfect = true;
  } else {
    throw ConfigError("unknown design element '" + std::string(element) +
                      "' (expected pbs, ppbs, f1 or f2)");
  }
  return p;
}

std::vector<std::string> design_preset_names() { return {"pbs", "ppbs", "f1", "f2"}; }

NotchCalibration default_notch_calibration() {
  NotchCalibration cal;
  cal.anchors = {
      {0.75, Polarization::V, 0.25},
      {2.90, Polarization::H, 0.50},
      {2.75, Polarization::V, 0.50},
  };
  return cal;
}

void validate(const NotchCalibration& calibration) {
  for (const auto& a : calibration.anchors) {
    if (!(a.length_um >= 0.0) || !std::isfinite(a.length_um)) {
      throw ValidationError("notch anchor length must be a non-negative number");
    }
    if (!(a.conversion >= 0.0 && a.conversion <= 1.0)) {
      throw ValidationError("notch anchor conversion must lie in [0, 1]");
    }
  }
  for (auto pol : kPolarizations) {
    const auto as = anchors_for(calibration, pol);
    for (std::size_t i = 1; i < as.size(); ++i) {
      if (as[i].length_um == as[i - 1].length_um && as[i].conversion != as[i - 1].conversion) {
        std::ostringstream os;
        os << "conflicting notch anchors for " << to_char(pol) << " at " << as[i].length_um << " um";
        throw ValidationError(os.str());
      }
    }
  }
}

std::pair<double, double> notch_span(const NotchCalibration& calibration, Polarization input) {
  const auto as = anchors_for(calibration, input);
  if (as.empty()) {
    throw ModelError(std::string("no notch anchors for ") + to_char(input) + " input");
  }
  return {as.front().length_um, as.back().length_um};
}

double notch_conversion(const NotchCalibration& calibration, double length_um,
                        Polarization input) {
  const auto as = anchors_for(calibration, input);
  const auto [lo, hi] = notch_span(calibration, input);
  if (!(length_um >= lo && length_um <= hi)) {
    std::ostringstream os;
    os << "notch length " << length_um << " um is outside the calibrated span [" << lo << ", " << hi
       << "] um for " << to_char(input) << " input";
    throw ModelError(os.str());
  }
  for (std::size_t i = 0; i < as.size(); ++i) {
    if (as[i].length_um == length_um) return as[i].conversion;
    if (i + 1 < as.size() && length_um < as[i + 1].length_um) {
      const double f = (length_um - as[i].length_um) / (as[i + 1].length_um - as[i].length_um);
      return as[i].conversion + f * (as[i + 1].conversion - as[i].conversion);
    }
  }
  return as.back().conversion;
}

Eigen::Matrix2cd rotator_matrix(double conversion, Polarization input) {
  if (!(conversion >= 0.0 && conversion <= 1.0)) {
    throw ModelError("polarization conversion must lie in [0, 1]");
  }
  const double keep = std::sqrt(1.0 - conversion);
  const double flip = std::sqrt(conversion);
  Eigen::Matrix2cd m;
  if (input == Polarization::H) {
    m << keep, flip, flip, -keep;
  } else {
    // Same form in (V, H) order, then relabelled into (H, V).
    m << -keep, flip, flip, keep;
  }
  return m;
}

SynthesisResult synthesize_imperfect_elements(const Netlist& netlist,
                                              const CouplerPhysics& physics,
                                              const Perturbation& perturbation) {
  validate(physics);
  const auto& sens = physics.sensitivity(perturbation.dimension);
  if (perturbation.delta_nm != 0.0 && !sens.configured()) {
    throw ConfigError("no beat-length sensitivity configured for " +
                      std::string(to_string(perturbation.dimension)) +
                      "; set sensitivities." + std::string(to_string(perturbation.dimension)) +
                      " in the physics file");
  }

  SynthesisResult result;
  if (std::abs(perturbation.delta_nm) > kToleranceWarnNm) {
    std::ostringstream os;
    os << "|delta " << to_string(perturbation.dimension) << "| = "
       << std::abs(perturbation.delta_nm) << " nm exceeds " << kToleranceWarnNm
       << " nm; the linear beat-length model is unreliable there";
    result.warnings.push_back(os.str());
  }

  for (const auto& spec : netlist.elements) {
    if (!is_coupler_based(spec)) continue;
    const auto length = fabricated_length(spec);
    if (!length) continue;

    std::array<SplitAmplitudes, 2> amps{};
    for (auto pol : kPolarizations) {
      const auto nominal = split_amplitudes(spec, pol);
      const double beat = physics.beat(pol);
      const double shifted = beat + (pol == Polarization::H ? sens.h : sens.v) * perturbation.delta_nm;
      if (!(shifted > 0.0)) {
        std::ostringstream os;
        os << "perturbed beat length for " << to_char(pol) << " is non-positive (" << shifted
           << " um)";
        throw ModelError(os.str());
      }
      const double theta = std::atan2(std::abs(nominal.cross), std::abs(nominal.bar)) +
                           kPi * *length * (1.0 / shifted - 1.0 / beat);
      amps[static_cast<std::size_t>(pol)] = {signed_like(nominal.bar, std::abs(std::cos(theta))),
                                             signed_like(nominal.cross, std::abs(std::sin(theta)))};
    }

    ElementOverride o;
    o.spec = spec;
    if (auto* c = std::get_if<CouplerParams>(&o.spec.params)) {
      c->h = amps[0];
      c->v = amps[1];
    } else if (auto* f = std::get_if<FilterParams>(&o.spec.params)) {
      f->transmission_h = std::abs(amps[0].bar);
      f->transmission_v = std::abs(amps[1].bar);
    }
    o.matrix = build_element(o.spec);
    o.bar_power_h = amps[0].bar * amps[0].bar;
    o.bar_power_v = amps[1].bar * amps[1].bar;
    result.overrides.push_back(std::move(o));
  }
  return result;
}

Netlist apply_overrides(Netlist netlist, const std::vector<ElementOverride>& overrides) {
  for (const auto& o : overrides) {
    auto it = std::find_if(netlist.elements.begin(), netlist.elements.end(),
                           [&](const ElementSpec& e) { return e.name == o.spec.name; });
    if (it == netlist.elements.end()) {
      throw ModelError("override for unknown element '" + o.spec.name + "'");
    }
    *it = o.spec;
  }
  return netlist;
}

std::vector<SweepRow> tolerance_sweep(const Netlist& netlist, const CouplerPhysics& physics,
                                      const SweepSpec& spec) {
  validate(physics);
  validate(netlist);
  if (!(spec.step_nm > 0.0) || !(spec.to_nm >= spec.from_nm)) {
    throw ConfigError("sweep needs step > 0 and to >= from");
  }
  const auto n = static_cast<std::size_t>(std::floor((spec.to_nm - spec.from_nm) / spec.step_nm + 1e-9));
  std::vector<double> deltas(n + 1);
  for (std::size_t i = 0; i <= n; ++i) deltas[i] = spec.from_nm + static_cast<double>(i) * spec.step_nm;

  const bool any_nonzero = std::any_of(deltas.begin(), deltas.end(), [](double d) { return d != 0.0; });
  if (any_nonzero && !physics.sensitivity(spec.dimension).configured()) {
    // Fail before spawning work.
    (void)synthesize_imperfect_elements(netlist, physics, {spec.dimension, 1.0});
  }

  auto point = [&](double delta) {
    const auto synth = synthesize_imperfect_elements(netlist, physics, {spec.dimension, delta});
    const auto circuit = compile(apply_overrides(netlist, synth.overrides));
    const auto gate = extract_gate(circuit, spec.phi);
    SweepRow row;
    row.delta_nm = delta;
    for (const auto& o : synth.overrides) row.bars.push_back({o.spec.name, o.bar_power_h, o.bar_power_v});
    row.herald_probability = gate.herald_probability;
    double sum = 0.0;
    for (double p : gate.herald_probability) sum += p;
    row.mean_probability = sum / 4.0;
    row.fidelity = gate.fidelity;
    return row;
  };

  // A bounded pool of workers, each taking every k-th grid point.
  std::vector<SweepRow> rows(deltas.size());
  const std::size_t workers =
      std::min<std::size_t>(deltas.size(), std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < deltas.size(); i += workers) rows[i] = point(deltas[i]);
    }));
  }
  for (auto& j : jobs) j.get();
  return rows;
}

}  // namespace cphase
