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
#include <random>

#include "cphase/elements.hpp"
#include "cphase/errors.hpp"

using namespace cphase;

namespace {

ModeSpacePtr ports(std::vector<std::string> p) {
  return std::make_shared<const ModeSpace>(ModeSpace::from_ports(p));
}

FockVector occ(const ModeSpace& s, std::vector<std::pair<Mode, int>> photons) {
  FockVector v(s.size());
  for (const auto& [m, n] : photons) v[s.index_of(m)] = static_cast<std::uint8_t>(n);
  return v;
}

const Mode aH{"a", Polarization::H}, aV{"a", Polarization::V};
const Mode bH{"b", Polarization::H}, bV{"b", Polarization::V};

}  // namespace

TEST_CASE("PBS routes H to bar and V to cross") {
  auto s = ports({"a", "b"});
  const auto pbs = build_element(make_pbs("P", "a", "b"));
  const auto h = apply_element(PureState::basis(s, occ(*s, {{aH, 1}})), pbs);
  CHECK(std::abs(h.amplitude(occ(*s, {{aH, 1}}))) == doctest::Approx(1.0));
  const auto v = apply_element(PureState::basis(s, occ(*s, {{aV, 1}})), pbs);
  CHECK(std::abs(v.amplitude(occ(*s, {{bV, 1}}))) == doctest::Approx(1.0));
  CHECK(v.size() == 1);
}

TEST_CASE("balanced splitter gives Hong-Ou-Mandel bunching") {
  auto s = ports({"a", "b"});
  const double r = std::numbers::sqrt2 / 2;
  const auto bs = build_element(make_beam_splitter("BS", "a", "b", {r, r}, {r, r}));
  const auto out = apply_element(PureState::basis(s, occ(*s, {{aH, 1}, {bH, 1}})), bs);
  CHECK(std::abs(out.amplitude(occ(*s, {{aH, 1}, {bH, 1}}))) < 1e-15);
  CHECK(std::abs(out.amplitude(occ(*s, {{aH, 2}}))) == doctest::Approx(r));
  CHECK(std::abs(out.amplitude(occ(*s, {{bH, 2}}))) == doctest::Approx(r));
}

TEST_CASE("PPBS coincidence amplitude is t^2 - r^2") {
  auto s = ports({"a", "b"});
  const auto ppbs = build_element(make_ppbs("PP", "a", "b"));
  const auto vv = apply_element(PureState::basis(s, occ(*s, {{aV, 1}, {bV, 1}})), ppbs);
  CHECK(vv.amplitude(occ(*s, {{aV, 1}, {bV, 1}})).real() == doctest::Approx(-1.0 / 3.0).epsilon(1e-13));
  // H is untouched, so two H photons never interfere.
  const auto hh = apply_element(PureState::basis(s, occ(*s, {{aH, 1}, {bH, 1}})), ppbs);
  CHECK(hh.amplitude(occ(*s, {{aH, 1}, {bH, 1}})).real() == doctest::Approx(1.0));
}

TEST_CASE("filter sends the rejected amplitude into its loss port") {
  auto s = ports({"a"});
  const auto f = build_element(make_filter("F", "a", 0.5, 1.0));
  const auto out = apply_element(PureState::basis(s, occ(*s, {{aH, 1}})), f);
  CHECK(out.space()->contains({"F.loss", Polarization::H}));
  CHECK(out.amplitude(occ(*out.space(), {{aH, 1}})).real() == doctest::Approx(0.5));
  CHECK(norm_squared(out) == doctest::Approx(1.0));
  CHECK_THROWS_AS(build_element(make_filter("F", "a", 1.2, 1.0)), ModelError);
}

TEST_CASE("wave-plate presets") {
  const auto h = presets::hwp23();
  CHECK((h * h - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-15);
  const auto w = presets::hwp1();
  // |1> -> 1/2 |0> + sqrt3/2 |1>
  CHECK(w(0, 1).real() == doctest::Approx(0.5));
  CHECK(w(1, 1).real() == doctest::Approx(std::sqrt(3.0) / 2));
  CHECK((presets::half_wave_plate(std::numbers::pi / 8) - h).cwiseAbs().maxCoeff() < 1e-15);
  CHECK_THROWS_AS(presets::by_name("QWP"), ModelError);
}

TEST_CASE("non-unitary wave plate is rejected with its deviation") {
  Eigen::Matrix2cd m;
  m << 1.0, 0.1, 0.0, 1.0;
  try {
    (void)build_element(make_wave_plate("W", "a", m));
    FAIL("expected ModelError");
  } catch (const ModelError& e) {
    CHECK(std::string(e.what()).find("not unitary") != std::string::npos);
  }
}

TEST_CASE("unbalanced coupler is rejected") {
  CHECK_THROWS_AS(build_element(make_beam_splitter("B", "a", "b", {0.9, 0.9}, {1, 0})), ModelError);
}

TEST_CASE("embedding an element needs its ports") {
  const auto pbs = build_element(make_pbs("P", "a", "zz"));
  CHECK_THROWS_WITH_AS(embed_element(pbs, ModeSpace::from_ports({"a", "b"})),
                       "element 'P': unresolved port 'zz'", ModelError);
}

TEST_CASE("detector with efficiency below one gets a loss port") {
  const auto d = make_detector("D", "a", 0.81);
  CHECK(loss_port(d) == std::optional<std::string>("D.loss"));
  const auto m = build_element(d);
  CHECK(m.matrix(0, 0).real() == doctest::Approx(0.9));
  CHECK_FALSE(loss_port(make_detector("D", "a")).has_value());
}

TEST_CASE("element application is unitary on random multi-photon states (property)") {
  std::mt19937_64 rng(2026);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 2 * std::numbers::pi);
  auto s = ports({"a", "b"});
  for (int trial = 0; trial < 40; ++trial) {
    const double th = u(rng), tv = u(rng);
    const auto bs = build_element(make_beam_splitter("B", "a", "b", {std::cos(th), std::sin(th)},
                                                     {std::cos(tv), std::sin(tv)}));
    const auto ps = build_element(make_phase_shift("S", "b", u(rng), u(rng)));
    const unsigned n = 1 + trial % 4;
    std::vector<std::pair<FockVector, Amplitude>> terms;
    for (const auto& v : enumerate_fock_vectors(4, n)) terms.emplace_back(v, Amplitude(g(rng), g(rng)));
    auto st = PureState::from_terms(s, terms);
    st = st.scaled(1.0 / std::sqrt(norm_squared(st)));
    const auto out = apply_element(apply_element(st, bs), ps);
    CHECK(std::abs(norm_squared(out) - 1.0) <= 1e-12);
    for (const auto& [v, a] : out.terms()) CHECK(v.total() == n);
  }
}

TEST_CASE("netlist kind spelling round-trips") {
  for (auto k : {ElementKind::BeamSplitter, ElementKind::PolarizingBeamSplitter,
                 ElementKind::PartiallyPolarizingBeamSplitter, ElementKind::Filter,
                 ElementKind::WavePlate, ElementKind::PhaseShift, ElementKind::Detector,
                 ElementKind::Dump}) {
    CHECK(element_kind_from_string(to_string(k)) == k);
  }
  CHECK_THROWS_AS(element_kind_from_string("mirror"), ModelError);
}
