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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cphase/errors.hpp"
#include "cphase/io.hpp"
#include "cphase/svg.hpp"

using namespace cphase;
using nlohmann::json;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "cphase_io_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("netlist JSON round-trip preserves the gate") {
  const auto original = default_netlist();
  const auto path = scratch("default.json");
  save_netlist(original, path);
  const auto loaded = load_netlist(path);
  CHECK(netlist_to_json(loaded) == netlist_to_json(original));
  const auto a = extract_gate(compile(original), 0.9);
  const auto b = extract_gate(compile(loaded), 0.9);
  CHECK((a.op - b.op).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("netlist presets and defaults are filled in") {
  auto doc = netlist_to_json(default_netlist());
  for (auto& e : doc["elements"]) {
    if (e["kind"] == "pbs" || e["kind"] == "ppbs") {
      e.erase("h");
      e.erase("v");
    }
    if (e["kind"] == "wave_plate" && e["name"] != "HWP_D") e.erase("matrix");
    if (e["name"] == "HWP_D") {
      e.erase("matrix");
      e["angle_rad"] = -std::numbers::pi / 8;
    }
  }
  const auto n = netlist_from_json(doc);
  const auto g = extract_gate(compile(n), 2.0);
  CHECK(g.fidelity >= 1 - 1e-12);
  CHECK(g.herald_probability[2] == doctest::Approx(1.0 / 48).epsilon(1e-12));
}

TEST_CASE("structural netlist errors are validation errors") {
  auto doc = netlist_to_json(default_netlist());
  auto missing = doc;
  missing.erase("herald");
  CHECK_THROWS_AS(netlist_from_json(missing), ValidationError);

  auto bad_kind = doc;
  bad_kind["elements"][0]["kind"] = "mirror";
  CHECK_THROWS_WITH_AS(netlist_from_json(bad_kind), "element 'PBS1': unknown element kind 'mirror'",
                       ValidationError);

  auto bad_type = doc;
  bad_type["elements"][1]["transmission_h"] = "half";
  CHECK_THROWS_AS(netlist_from_json(bad_type), ValidationError);

  auto bad_mode = doc;
  bad_mode["herald"][0]["modes"][0] = "target";
  CHECK_THROWS_AS(netlist_from_json(bad_mode), ValidationError);
}

TEST_CASE("unreadable and malformed files are configuration errors") {
  CHECK_THROWS_WITH_AS(load_netlist("/nonexistent/x.json"), "cannot read '/nonexistent/x.json'", ConfigError);
  const auto path = scratch("broken.json");
  write_text_file(path, "{ not json");
  CHECK_THROWS_AS(load_netlist(path), ConfigError);
  CHECK_THROWS_AS(load_physics(path), ConfigError);
}

TEST_CASE("physics JSON defaults, overrides and round-trip") {
  const auto empty = physics_from_json(json::object());
  CHECK(empty.coupler.beat_h_um == 35.80);
  CHECK(empty.coupler.geometry.ring_coupling_um == 108.20);
  CHECK(empty.notch.anchors.size() == 3);
  CHECK_FALSE(empty.coupler.sensitivity(Dimension::Width).configured());

  const auto p = physics_from_json(json::parse(R"({"beat_v_um": 8.4,
      "sensitivities": {"gap": {"h": -0.01, "v": -0.02}}})"));
  CHECK(p.coupler.beat_v_um == 8.4);
  CHECK(p.coupler.sensitivity(Dimension::Gap).v == -0.02);
  CHECK(physics_to_json(physics_from_json(physics_to_json(p))) == physics_to_json(p));

  CHECK_THROWS_AS(physics_from_json(json::parse(R"({"beat_h_um": -1})")), ValidationError);
  CHECK_THROWS_AS(physics_from_json(json::parse(R"({"sensitivities": {"depth": {}}})")), ValidationError);
}

TEST_CASE("qubit amplitude parsing") {
  const auto q = parse_qubit("0.6,0:0,-0.8");
  CHECK(q.zero == Amplitude(0.6, 0));
  CHECK(q.one == Amplitude(0, -0.8));
  CHECK_THROWS_AS(parse_qubit("1,0"), ConfigError);
  CHECK_THROWS_AS(parse_qubit("1,0:x,0"), ConfigError);
  CHECK_THROWS_AS(parse_qubit("1,0:0,0junk"), ConfigError);
}

TEST_CASE("number formatting and CSV layout") {
  CHECK(format_number(1.0 / 48) == "0.0208333333333");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(70.72) == "70.72");
  CsvTable t({"a", "b"});
  t.add_row({"1", "x,y"});
  CHECK(t.str() == "a,b\n1,\"x,y\"\n");
  CHECK_THROWS_AS(t.add_row({"1"}), ModelError);
}

TEST_CASE("svg output is deterministic and well formed") {
  Chart c{"t", "x", {{"y", {{"s", {0, 1, 2}, {1, 0.5, 0.25}, "#000"}}}}};
  const auto a = render_svg(c);
  CHECK(a == render_svg(c));
  CHECK(a.rfind("<svg", 0) == 0);
  CHECK(a.find("<polyline") != std::string::npos);
  CHECK(a.find("</svg>") != std::string::npos);
  Chart bad{"t", "x", {{"y", {{"s", {0, 1}, {1}, "#000"}}}}};
  CHECK_THROWS_AS(render_svg(bad), ModelError);
}
