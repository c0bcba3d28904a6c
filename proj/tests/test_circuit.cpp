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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cphase/circuit.hpp"
#include "cphase/errors.hpp"

using namespace cphase;

namespace {

constexpr double kPi = std::numbers::pi;

ElementSpec& element(Netlist& n, const std::string& name) {
  for (auto& e : n.elements) {
    if (e.name == name) return e;
  }
  throw std::runtime_error("no element " + name);
}

}  // namespace

TEST_CASE("default netlist inventory") {
  const auto n = default_netlist();
  CHECK_NOTHROW(validate(n));
  const auto c = census(n);
  CHECK(c.pbs == 3);
  CHECK(c.ppbs == 1);
  CHECK(c.filters == 2);
  CHECK(c.wave_plates == 4);
  CHECK(c.detectors == 1);
  CHECK(compile(n).space->size() == 12);
}

TEST_CASE("gate realizes diag(1,1,1,e^{i phi}) for a sweep of phases") {
  const auto circuit = compile(default_netlist());
  for (int k = 0; k < 12; ++k) {
    const double phi = 2 * kPi * k / 12;
    const auto g = extract_gate(circuit, phi);
    CAPTURE(phi);
    CHECK(g.kraus.size() == 1);
    CHECK(g.max_off_diagonal() < 1e-12);
    const Eigen::Matrix4cd normalized = g.op / g.op(0, 0);
    CHECK((normalized - ideal_cphase(phi)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(g.fidelity >= 1 - 1e-12);
    for (double p : g.herald_probability) CHECK(p == doctest::Approx(1.0 / 48).epsilon(1e-12));
  }
}

TEST_CASE("phi = pi/2 gives (1,1,1,i) up to a global phase") {
  const auto g = extract_gate(compile(default_netlist()), kPi / 2);
  const Amplitude d0 = g.op(0, 0);
  CHECK(std::abs(g.op(1, 1) / d0 - 1.0) < 1e-12);
  CHECK(std::abs(g.op(2, 2) / d0 - 1.0) < 1e-12);
  CHECK(std::abs(g.op(3, 3) / d0 - Amplitude(0, 1)) < 1e-12);
  CHECK(g.relative_phase() == doctest::Approx(kPi / 2).epsilon(1e-12));
}

TEST_CASE("superposition inputs succeed with the same probability") {
  const auto circuit = compile(default_netlist());
  const double s = std::numbers::sqrt2 / 2;
  const QubitAmplitudes plus{s, s};
  const QubitAmplitudes odd{Amplitude(0.6, 0), Amplitude(0, 0.8)};
  const double phi = 1.1;
  const auto out = run_heralded(circuit, prepare_input(circuit, plus, odd, ProgramState{phi}));
  CHECK(out.state.is_open_system());
  CHECK(out.probability == doctest::Approx(1.0 / 48).epsilon(1e-12));

  const auto logical = read_logical_output(circuit, out.state);
  REQUIRE(logical.size() == 1);
  Eigen::Vector4cd in;
  in << plus.zero * odd.zero, plus.zero * odd.one, plus.one * odd.zero, plus.one * odd.one;
  const Eigen::Vector4cd expect = ideal_cphase(phi) * in;
  const Eigen::Vector4cd got = logical.begin()->second;
  CHECK(process_fidelity(got, expect) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("unnormalized qubit amplitudes are rejected") {
  const auto circuit = compile(default_netlist());
  CHECK_THROWS_AS(prepare_input(circuit, {1.0, 1.0}, {1.0, 0.0}, {}), ModelError);
}

TEST_CASE("validation catches wiring mistakes") {
  auto base = default_netlist();
  {
    auto n = base;
    n.ports.push_back("target");
    CHECK_THROWS_AS(validate(n), ValidationError);
  }
  {
    auto n = base;
    n.elements[0].ports[1] = "nowhere";
    CHECK_THROWS_AS(validate(n), ValidationError);
  }
  {
    auto n = base;
    n.ports.push_back("spare");
    CHECK_THROWS_WITH_AS(validate(n), "netlist 'programmable-cphase': port 'spare' is not wired to anything",
                         ValidationError);
  }
  {
    auto n = base;
    n.herald.constraints[0].modes[0].port = "ghost";
    CHECK_THROWS_AS(validate(n), ValidationError);
  }
  {
    auto n = base;
    n.encoding.control.input = n.encoding.target.input;
    CHECK_THROWS_AS(validate(n), ValidationError);
  }
  {
    auto n = base;
    n.elements[1].name = n.elements[0].name;
    CHECK_THROWS_AS(validate(n), ValidationError);
  }
  {
    auto n = base;
    std::get<FilterParams>(element(n, "F1").params).transmission_h = 1.5;
    CHECK_THROWS_AS(validate(n), ValidationError);
  }
}

TEST_CASE("a leaky PBS splits the heralded output into several branches") {
  auto n = default_netlist();
  auto& p = std::get<CouplerParams>(element(n, "PBS1").params);
  p.v = {0.1, std::sqrt(1 - 0.01)};
  const auto g = extract_gate(compile(n), kPi);
  CHECK(g.fidelity < 1 - 1e-6);
  CHECK(g.fidelity > 0.5);
}

TEST_CASE("wrong F2 transmission breaks input uniformity") {
  auto n = default_netlist();
  std::get<FilterParams>(element(n, "F2").params).transmission_h = 0.7;
  const auto g = extract_gate(compile(n), 0.0);
  CHECK(std::abs(g.herald_probability[0] - g.herald_probability[3]) > 1e-3);
}

TEST_CASE("process fidelity") {
  const auto a = ideal_cphase(0.3);
  CHECK(process_fidelity(a, a * std::polar(0.2, 1.0)) == doctest::Approx(1.0));
  CHECK(process_fidelity(ideal_cphase(0), ideal_cphase(kPi)) == doctest::Approx(0.25));
  CHECK_THROWS_AS(process_fidelity(a, Eigen::Matrix4cd::Zero()), ModelError);
}
