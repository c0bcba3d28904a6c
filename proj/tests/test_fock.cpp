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
#include <random>

#include "cphase/errors.hpp"
#include "cphase/fock.hpp"

using namespace cphase;

namespace {

ModeSpacePtr space_of(std::vector<std::string> ports) {
  return std::make_shared<const ModeSpace>(ModeSpace::from_ports(ports));
}

}  // namespace

TEST_CASE("mode strings round-trip") {
  const Mode m = mode_from_string("F1.loss:V");
  CHECK(m.port == "F1.loss");
  CHECK(m.pol == Polarization::V);
  CHECK(to_string(m) == "F1.loss:V");
  CHECK_THROWS_AS(mode_from_string("target"), ModelError);
  CHECK_THROWS_AS(mode_from_string("target:D"), ModelError);
}

TEST_CASE("mode space order is ports first, H before V") {
  const auto s = ModeSpace::from_ports({"b", "a"});
  REQUIRE(s.size() == 4);
  CHECK(s.at(0) == Mode{"b", Polarization::H});
  CHECK(s.at(3) == Mode{"a", Polarization::V});
  CHECK(s.ports() == std::vector<std::string>{"b", "a"});
  CHECK_THROWS_WITH_AS(s.index_of({"c", Polarization::H}), "unknown mode c:H", ModelError);
  CHECK_THROWS_AS(ModeSpace::from_ports({"a", "a"}), ModelError);
}

TEST_CASE("from_terms accumulates and prunes") {
  auto s = space_of({"a"});
  const auto st = PureState::from_terms(
      s, {{FockVector({1, 0}), 0.5}, {FockVector({1, 0}), 0.25}, {FockVector({0, 1}), 1e-15}});
  CHECK(st.size() == 1);
  CHECK(st.amplitude(FockVector({1, 0})) == Amplitude(0.75));
  CHECK(st.amplitude(FockVector({0, 1})) == Amplitude(0.0));
  CHECK_THROWS_AS(PureState::from_terms(s, {{FockVector({1}), 1.0}}), ModelError);
}

TEST_CASE("tensor concatenates modes and rejects overlap") {
  auto a = PureState::basis(space_of({"a"}), FockVector({1, 0}));
  auto b = PureState::from_terms(space_of({"b"}), {{FockVector({1, 0}), 0.6}, {FockVector({0, 1}), 0.8}});
  const auto ab = tensor(a, b);
  CHECK(ab.space()->size() == 4);
  CHECK(ab.amplitude(FockVector({1, 0, 0, 1})) == Amplitude(0.8));
  CHECK(norm_squared(ab) == doctest::Approx(1.0));
  CHECK_THROWS_WITH_AS(tensor(a, a), "tensor: mode a:H appears in both operands", ModelError);
}

TEST_CASE("embedding keeps amplitudes and needs every mode") {
  auto small = PureState::basis(space_of({"b"}), FockVector({0, 2}), Amplitude(0, 1));
  auto big = space_of({"a", "b"});
  const auto e = small.embedded(big);
  CHECK(e.amplitude(FockVector({0, 0, 0, 2})) == Amplitude(0, 1));
  CHECK_THROWS_AS(e.embedded(space_of({"a"})), ModelError);
  CHECK(e.photon_number() == 2u);
}

TEST_CASE("herald projection is unnormalized and marks an open system") {
  auto s = space_of({"a", "b"});
  const auto st = PureState::from_terms(
      s, {{FockVector({1, 0, 1, 0}), 0.6}, {FockVector({2, 0, 0, 0}), Amplitude(0, 0.8)}});
  HeraldPattern p{{{{{"b", Polarization::H}, {"b", Polarization::V}}, 1}}};
  const auto out = project_herald(st, p);
  CHECK(out.probability == doctest::Approx(0.36).epsilon(1e-14));
  CHECK(out.state.is_open_system());
  CHECK(out.state.size() == 1);

  const auto all = project_herald(st, HeraldPattern{});
  CHECK_FALSE(all.state.is_open_system());
  CHECK(all.probability == doctest::Approx(1.0));
  HeraldPattern bad{{{{{"z", Polarization::H}}, 1}}};
  CHECK_THROWS_AS(project_herald(st, bad), ModelError);
}

TEST_CASE("fock enumeration is complete and lexicographic") {
  // C(n + m - 1, n)
  CHECK(enumerate_fock_vectors(12, 0).size() == 1);
  CHECK(enumerate_fock_vectors(12, 1).size() == 12);
  CHECK(enumerate_fock_vectors(12, 2).size() == 78);
  const auto three = enumerate_fock_vectors(12, 3);
  CHECK(three.size() == 364);
  CHECK(std::is_sorted(three.begin(), three.end()));
  for (const auto& v : three) CHECK(v.total() == 3);
}

TEST_CASE("state printing is stable") {
  auto s = space_of({"t"});
  const auto st = PureState::from_terms(s, {{FockVector({0, 1}), Amplitude(0.5, -0.5)}, {FockVector({1, 0}), 1.0}});
  CHECK(to_string(st) == "(0.5-0.5i) |t:V>\n(1+0i) |t:H>\n");
  CHECK(to_string(FockVector({0, 0}), *s) == "|vac>");
  CHECK(to_string(FockVector({2, 0}), *s) == "|t:H^2>");
}

TEST_CASE("scaling by a unit phase preserves norm (property)") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  auto s = space_of({"a", "b", "c"});
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::pair<FockVector, Amplitude>> terms;
    for (const auto& v : enumerate_fock_vectors(6, 2)) terms.emplace_back(v, Amplitude(g(rng), g(rng)));
    const auto st = PureState::from_terms(s, terms);
    const auto phased = st.scaled(std::polar(1.0, g(rng)));
    CHECK(std::abs(norm_squared(phased) - norm_squared(st)) <= 1e-12 * norm_squared(st));
  }
}
