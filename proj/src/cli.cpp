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

#include "cphase/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "cphase/acceptance.hpp"
#include "cphase/circuit.hpp"
#include "cphase/design.hpp"
#include "cphase/errors.hpp"
#include "cphase/io.hpp"
#include "cphase/svg.hpp"

namespace cphase {
namespace {

const char* const kBasisLabels[4] = {"00", "01", "10", "11"};

struct Options {
  std::string netlist_path;
  std::string physics_path;
  std::string out_path;
  double phi = 0.0;
  double sweep_phi = std::numbers::pi;
  std::string target = "1,0:0,0";
  std::string control = "1,0:0,0";
  std::string element;
  std::size_t count = 5;
  std::string dimension = "width";
  double from_nm = -10.0;
  double to_nm = 10.0;
  double step_nm = 1.0;
  std::optional<double> sens_h;
  std::optional<double> sens_v;
  std::string plot_path;
};

Netlist load_or_default(const Options& o) {
  return o.netlist_path.empty() ? default_netlist() : load_netlist(o.netlist_path);
}

PhysicsConfig physics_or_default(const Options& o) {
  return o.physics_path.empty() ? PhysicsConfig{} : load_physics(o.physics_path);
}

// Display only; tables keep the raw values.
std::string complex_text(Amplitude a) {
  if (std::abs(a.real()) < 1e-15) a.real(0.0);
  if (std::abs(a.imag()) < 1e-15) a.imag(0.0);
  return "(" + format_number(a.real()) + (a.imag() < 0 ? "" : "+") + format_number(a.imag()) + "i)";
}

// Writes the table to the requested file or, without one, to `out`.
void emit_table(const CsvTable& table, const Options& o, std::ostream& out) {
  if (o.out_path.empty()) {
    table.write(out);
  } else {
    write_text_file(o.out_path, table.str());
    out << "wrote " << o.out_path << "\n";
  }
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const auto target = parse_qubit(o.target);
  const auto control = parse_qubit(o.control);
  const auto circuit = compile(load_or_default(o));
  const auto outcome =
      run_heralded(circuit, prepare_input(circuit, target, control, ProgramState{o.phi}));
  const auto gate = extract_gate(circuit, o.phi);

  out << "netlist: " << circuit.netlist.name << "\n";
  out << "phi_rad: " << format_number(o.phi) << "\n";
  out << "input: target " << complex_text(target.zero) << "|0> + " << complex_text(target.one)
      << "|1>, control " << complex_text(control.zero) << "|0> + " << complex_text(control.one)
      << "|1>\n";
  out << "herald_probability: " << format_number(outcome.probability) << "\n";
  out << "heralded_state:\n" << to_string(outcome.state);

  const auto logical = read_logical_output(circuit, outcome.state);
  for (const auto& [env, amps] : logical) {
    out << "logical_output";
    if (logical.size() > 1) out << " [" << to_string(env, *outcome.state.space()) << "]";
    out << ":";
    for (int k = 0; k < 4; ++k) out << ' ' << complex_text(amps(k)) << "|" << kBasisLabels[k] << ">";
    out << "\n";
  }
  out << "relative_phase_rad: " << format_number(gate.relative_phase()) << "\n";
  out << "process_fidelity: " << format_number(gate.fidelity) << "\n";

  if (!o.out_path.empty()) {
    std::vector<std::string> header{"phi_rad", "herald_probability"};
    for (const auto* l : kBasisLabels) {
      header.push_back(std::string("amp_") + l + "_re");
      header.push_back(std::string("amp_") + l + "_im");
    }
    header.insert(header.end(), {"relative_phase_rad", "process_fidelity"});
    CsvTable table(header);
    Eigen::Vector4cd total = Eigen::Vector4cd::Zero();
    for (const auto& [env, amps] : logical) total += amps;
    std::vector<std::string> row{format_number(o.phi), format_number(outcome.probability)};
    for (int k = 0; k < 4; ++k) {
      row.push_back(format_number(total(k).real()));
      row.push_back(format_number(total(k).imag()));
    }
    row.push_back(format_number(gate.relative_phase()));
    row.push_back(format_number(gate.fidelity));
    table.add_row(row);
    write_text_file(o.out_path, table.str());
    out << "wrote " << o.out_path << "\n";
  }
  return kExitOk;
}

int cmd_truth_table(const Options& o, std::ostream& out) {
  const auto circuit = compile(load_or_default(o));
  const auto gate = extract_gate(circuit, o.phi);
  const bool diagonal = gate.max_off_diagonal() < 1e-10;

  out << "netlist: " << circuit.netlist.name << "\n";
  out << "phi_rad: " << format_number(o.phi) << "\n";
  out << "operator (column = input, row = output, target qubit first):\n";
  for (int r = 0; r < 4; ++r) {
    out << "  |" << kBasisLabels[r] << ">";
    for (int c = 0; c < 4; ++c) out << ' ' << complex_text(gate.op(r, c));
    out << "\n";
  }
  out << "max_off_diagonal: " << format_number(gate.max_off_diagonal())
      << (diagonal ? " (diagonal: pass)" : " (diagonal: FAIL)") << "\n";
  out << "relative_phase_rad: " << format_number(gate.relative_phase()) << "\n";
  out << "process_fidelity: " << format_number(gate.fidelity) << "\n";
  if (gate.kraus.size() > 1) out << "environment_branches: " << gate.kraus.size() << "\n";

  std::vector<std::string> header{"input", "herald_probability"};
  for (const auto* l : kBasisLabels) {
    header.push_back(std::string("out_") + l + "_re");
    header.push_back(std::string("out_") + l + "_im");
  }
  CsvTable table(header);
  for (int c = 0; c < 4; ++c) {
    std::vector<std::string> row{kBasisLabels[c], format_number(gate.herald_probability[c])};
    for (int r = 0; r < 4; ++r) {
      row.push_back(format_number(gate.op(r, c).real()));
      row.push_back(format_number(gate.op(r, c).imag()));
    }
    table.add_row(row);
  }
  emit_table(table, o, out);
  return kExitOk;
}

int cmd_design(const Options& o, std::ostream& out) {
  const auto physics = physics_or_default(o).coupler;
  const auto preset = design_preset(o.element);
  if (o.count == 0) throw ConfigError("--count must be at least 1");
  const auto solutions = solve_coupler_length(physics, preset.target, preset.range, o.count);

  out << "element: " << preset.element << "\n";
  out << "target: bar_h " << format_number(preset.target.bar_h) << " (weight "
      << format_number(preset.target.weight_h) << "), bar_v " << format_number(preset.target.bar_v)
      << " (weight " << format_number(preset.target.weight_v) << ")\n";
  out << "range_um: [" << format_number(preset.range.min_um) << ", "
      << format_number(preset.range.max_um) << "]\n";
  out << "reference_length_um: " << format_number(preset.reference_length_um) << "\n";

  CsvTable table({"rank", "length_um", "bar_power_h", "bar_power_v", "residual",
                  "delta_vs_reference_um"});
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    const auto& s = solutions[i];
    table.add_row({std::to_string(i + 1), format_number(s.length_um), format_number(s.bar_h),
                   format_number(s.bar_v), format_number(s.residual),
                   format_number(s.length_um - preset.reference_length_um)});
  }
  emit_table(table, o, out);

  if (preset.v_perfect) {
    out << "v_perfect_lengths (cross_v = 0 exactly):\n";
    CsvTable vp({"cycles", "length_um", "bar_power_h", "bar_h_minus_target"});
    for (const auto& v : enumerate_v_perfect_lengths(physics, preset.range)) {
      vp.add_row({std::to_string(v.cycles), format_number(v.length_um), format_number(v.bar_h),
                  format_number(v.bar_h - preset.target.bar_h)});
    }
    vp.write(out);
  }
  return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  auto physics = physics_or_default(o).coupler;
  const auto dim = dimension_from_string(o.dimension);
  if (o.sens_h) physics.sensitivity(dim).h = *o.sens_h;
  if (o.sens_v) physics.sensitivity(dim).v = *o.sens_v;
  const auto netlist = load_or_default(o);

  SweepSpec spec;
  spec.dimension = dim;
  spec.from_nm = o.from_nm;
  spec.to_nm = o.to_nm;
  spec.step_nm = o.step_nm;
  spec.phi = o.sweep_phi;
  if (std::max(std::abs(spec.from_nm), std::abs(spec.to_nm)) > kToleranceWarnNm) {
    err << "warning: sweep extends beyond +/-" << kToleranceWarnNm
        << " nm; the linear beat-length model is unreliable there\n";
  }
  const auto rows = tolerance_sweep(netlist, physics, spec);

  std::vector<std::string> header{"delta_nm", "fidelity", "mean_herald_probability"};
  for (const auto* l : kBasisLabels) header.push_back(std::string("herald_probability_") + l);
  if (!rows.empty()) {
    for (const auto& b : rows.front().bars) {
      header.push_back(b.element + "_bar_power_h");
      header.push_back(b.element + "_bar_power_v");
    }
  }
  CsvTable table(header);
  for (const auto& r : rows) {
    std::vector<std::string> row{format_number(r.delta_nm), format_number(r.fidelity),
                                 format_number(r.mean_probability)};
    for (double p : r.herald_probability) row.push_back(format_number(p));
    for (const auto& b : r.bars) {
      row.push_back(format_number(b.bar_h));
      row.push_back(format_number(b.bar_v));
    }
    table.add_row(row);
  }
  emit_table(table, o, out);

  if (!o.plot_path.empty()) {
    Series fid{"fidelity", {}, {}, "#1f77b4"};
    Series prob{"herald probability", {}, {}, "#d62728"};
    for (const auto& r : rows) {
      fid.x.push_back(r.delta_nm);
      fid.y.push_back(r.fidelity);
      prob.x.push_back(r.delta_nm);
      prob.y.push_back(r.mean_probability);
    }
    Chart chart{"Tolerance sweep: " + o.dimension,
                "delta " + o.dimension + " (nm)",
                {{"process fidelity", {fid}}, {"mean herald probability", {prob}}}};
    write_text_file(o.plot_path, render_svg(chart));
    out << "wrote " << o.plot_path << "\n";
  }
  return kExitOk;
}

int cmd_check(std::ostream& out) {
  const auto results = run_acceptance();
  print_results(out, results);
  const bool ok = all_passed(results);
  out << (ok ? "all criteria passed" : "acceptance FAILED") << "\n";
  return ok ? kExitOk : kExitAcceptance;
}

int cmd_netlist(const Options& o, std::ostream& out) {
  const auto netlist = load_or_default(o);
  if (o.out_path.empty()) {
    out << netlist_to_json(netlist).dump(2) << "\n";
  } else {
    save_netlist(netlist, o.out_path);
    out << "wrote " << o.out_path << "\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Programmable linear-optical CPHASE gate workbench"};
  app.require_subcommand(1);
  Options o;

  auto add_netlist = [&](CLI::App* c) {
    c->add_option("--netlist", o.netlist_path, "Netlist JSON (default: built-in circuit)");
  };

  auto* simulate = app.add_subcommand("simulate", "Run one heralded input through the circuit");
  add_netlist(simulate);
  simulate->add_option("--phi", o.phi, "Program phase in radians");
  simulate->add_option("--target", o.target, "Target qubit as re,im:re,im");
  simulate->add_option("--control", o.control, "Control qubit as re,im:re,im");
  simulate->add_option("--out", o.out_path, "Write a one-row CSV result record");

  auto* truth = app.add_subcommand("truth-table", "Dump the heralded 4x4 operator");
  add_netlist(truth);
  truth->add_option("--phi", o.phi, "Program phase in radians");
  truth->add_option("--out", o.out_path, "CSV output path (default: stdout)");

  auto* design = app.add_subcommand("design", "Solve coupler lengths");
  design->add_option("--element", o.element, "pbs, ppbs, f1 or f2")->required();
  design->add_option("--physics", o.physics_path, "Physics JSON");
  design->add_option("--count", o.count, "Number of ranked solutions");
  design->add_option("--out", o.out_path, "CSV output path (default: stdout)");

  auto* sweep = app.add_subcommand("sweep", "Fabrication tolerance sweep");
  add_netlist(sweep);
  sweep->add_option("--physics", o.physics_path, "Physics JSON with sensitivities");
  sweep->add_option("--dimension", o.dimension, "width, height or gap");
  sweep->add_option("--from", o.from_nm, "First delta in nm");
  sweep->add_option("--to", o.to_nm, "Last delta in nm");
  sweep->add_option("--step", o.step_nm, "Delta step in nm");
  sweep->add_option("--sens-h", o.sens_h, "Override d(beat_H)/d(dimension) in um/nm");
  sweep->add_option("--sens-v", o.sens_v, "Override d(beat_V)/d(dimension) in um/nm");
  sweep->add_option("--out", o.out_path, "CSV output path (default: stdout)");
  sweep->add_option("--plot", o.plot_path, "Write an SVG plot");
  sweep->add_option("--phi", o.sweep_phi, "Program phase in radians");

  auto* check = app.add_subcommand("check", "Run the acceptance suite");

  auto* netlist = app.add_subcommand("netlist", "Print a netlist (default: built-in) as JSON");
  add_netlist(netlist);
  netlist->add_option("--out", o.out_path, "Write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(o, out);
    if (truth->parsed()) return cmd_truth_table(o, out);
    if (design->parsed()) return cmd_design(o, out);
    if (sweep->parsed()) return cmd_sweep(o, out, err);
    if (check->parsed()) return cmd_check(out);
    if (netlist->parsed()) return cmd_netlist(o, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ValidationError& e) {
    err << "invalid: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ModelError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace cphase
