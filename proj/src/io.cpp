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

#include "cphase/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cphase/errors.hpp"

namespace cphase {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw ValidationError(where + ": " + what);
}

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) bad(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) bad(where, std::string("missing '") + key + "'");
  return *it;
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) bad(where, "expected a number");
  return v.get<double>();
}

std::string text(const json& v, const std::string& where) {
  if (!v.is_string()) bad(where, "expected a string");
  return v.get<std::string>();
}

double number_or(const json& obj, const char* key, double fallback, const std::string& where) {
  auto it = obj.find(key);
  return it == obj.end() ? fallback : number(*it, where + "." + key);
}

std::optional<double> optional_number(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  return number(*it, where + "." + key);
}

json split_to_json(const SplitAmplitudes& s) { return {{"bar", s.bar}, {"cross", s.cross}}; }

SplitAmplitudes split_from_json(const json& v, const std::string& where) {
  return {number(require(v, "bar", where), where + ".bar"),
          number(require(v, "cross", where), where + ".cross")};
}

json matrix_to_json(const Eigen::Matrix2cd& m) {
  json rows = json::array();
  for (int r = 0; r < 2; ++r) {
    json row = json::array();
    for (int c = 0; c < 2; ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

Eigen::Matrix2cd matrix_from_json(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) bad(where, "expected 2 rows");
  Eigen::Matrix2cd m;
  for (int r = 0; r < 2; ++r) {
    const auto& row = v[static_cast<std::size_t>(r)];
    if (!row.is_array() || row.size() != 2) bad(where, "expected 2 entries per row");
    for (int c = 0; c < 2; ++c) {
      const auto& z = row[static_cast<std::size_t>(c)];
      if (z.is_number()) {
        m(r, c) = z.get<double>();
      } else if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number()) {
        m(r, c) = {z[0].get<double>(), z[1].get<double>()};
      } else {
        bad(where, "entries must be numbers or [re, im] pairs");
      }
    }
  }
  return m;
}

json element_to_json(const ElementSpec& e) {
  json j = {{"name", e.name}, {"kind", std::string(to_string(e.kind))}, {"ports", e.ports}};
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, CouplerParams>) {
          j["h"] = split_to_json(p.h);
          j["v"] = split_to_json(p.v);
          if (p.length_um) j["length_um"] = *p.length_um;
        } else if constexpr (std::is_same_v<T, FilterParams>) {
          j["transmission_h"] = p.transmission_h;
          j["transmission_v"] = p.transmission_v;
          if (p.length_um) j["length_um"] = *p.length_um;
        } else if constexpr (std::is_same_v<T, WavePlateParams>) {
          if (!p.preset.empty()) j["preset"] = p.preset;
          j["matrix"] = matrix_to_json(p.matrix);
        } else if constexpr (std::is_same_v<T, PhaseShiftParams>) {
          j["phase_h"] = p.phase_h;
          j["phase_v"] = p.phase_v;
        } else if constexpr (std::is_same_v<T, DetectorParams>) {
          j["efficiency"] = p.efficiency;
        }
      },
      e.params);
  return j;
}

ElementSpec element_from_json(const json& j, const std::string& where0) {
  const std::string name = text(require(j, "name", where0), where0 + ".name");
  const std::string where = "element '" + name + "'";
  const std::string kind_text = text(require(j, "kind", where), where + ".kind");
  ElementKind kind;
  try {
    kind = element_kind_from_string(kind_text);
  } catch (const std::exception& err) {
    bad(where, err.what());
  }
  const auto& ports_json = require(j, "ports", where);
  if (!ports_json.is_array()) bad(where, "'ports' must be an array");
  std::vector<std::string> ports;
  for (const auto& p : ports_json) ports.push_back(text(p, where + ".ports"));

  ElementSpec e{name, kind, ports, DumpParams{}};
  switch (kind) {
    case ElementKind::BeamSplitter:
    case ElementKind::PolarizingBeamSplitter:
    case ElementKind::PartiallyPolarizingBeamSplitter: {
      CouplerParams c;
      if (kind == ElementKind::PolarizingBeamSplitter) {
        c = std::get<CouplerParams>(make_pbs(name, "a", "b").params);
      } else if (kind == ElementKind::PartiallyPolarizingBeamSplitter) {
        auto bar_v = optional_number(j, "bar_v", where);
        c = std::get<CouplerParams>(
            (bar_v ? make_ppbs(name, "a", "b", *bar_v) : make_ppbs(name, "a", "b")).params);
      } else if (!j.contains("h") || !j.contains("v")) {
        bad(where, "beam_splitter needs 'h' and 'v' amplitudes");
      }
      if (j.contains("h")) c.h = split_from_json(j["h"], where + ".h");
      if (j.contains("v")) c.v = split_from_json(j["v"], where + ".v");
      c.length_um = optional_number(j, "length_um", where);
      e.params = c;
      break;
    }
    case ElementKind::Filter:
      e.params = FilterParams{
          number(require(j, "transmission_h", where), where + ".transmission_h"),
          number(require(j, "transmission_v", where), where + ".transmission_v"),
          optional_number(j, "length_um", where)};
      break;
    case ElementKind::WavePlate: {
      WavePlateParams w;
      if (j.contains("preset")) w.preset = text(j["preset"], where + ".preset");
      if (j.contains("matrix")) {
        w.matrix = matrix_from_json(j["matrix"], where + ".matrix");
      } else if (j.contains("angle_rad")) {
        w.matrix = presets::half_wave_plate(number(j["angle_rad"], where + ".angle_rad"));
        if (w.preset.empty()) w.preset = "angle";
      } else if (!w.preset.empty()) {
        try {
          w.matrix = presets::by_name(w.preset);
        } catch (const std::exception& err) {
          bad(where, err.what());
        }
      } else {
        bad(where, "wave_plate needs 'matrix', 'angle_rad' or 'preset'");
      }
      e.params = w;
      break;
    }
    case ElementKind::PhaseShift:
      e.params = PhaseShiftParams{number_or(j, "phase_h", 0.0, where),
                                  number_or(j, "phase_v", 0.0, where)};
      break;
    case ElementKind::Detector:
      e.params = DetectorParams{number_or(j, "efficiency", 1.0, where)};
      break;
    case ElementKind::Dump:
      break;
  }
  return e;
}

Mode mode_or_bad(const json& v, const std::string& where) {
  try {
    return mode_from_string(text(v, where));
  } catch (const ValidationError&) {
    throw;
  } catch (const std::exception& err) {
    bad(where, err.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json parse_file(const std::filesystem::path& path) {
  const std::string content = read_file(path);
  try {
    return json::parse(content);
  } catch (const json::parse_error& err) {
    throw ConfigError("'" + path.string() + "' is not valid JSON: " + err.what());
  }
}

json sensitivity_to_json(const BeatSensitivity& s) { return {{"h", s.h}, {"v", s.v}}; }

}  // namespace

json netlist_to_json(const Netlist& netlist) {
  json j;
  j["name"] = netlist.name;
  j["ports"] = netlist.ports;
  j["elements"] = json::array();
  for (const auto& e : netlist.elements) j["elements"].push_back(element_to_json(e));
  j["sources"] = json::array();
  for (const auto& s : netlist.sources) j["sources"].push_back({{"port", s.port}, {"photons", s.photons}});
  j["herald"] = json::array();
  for (const auto& c : netlist.herald.constraints) {
    json modes = json::array();
    for (const auto& m : c.modes) modes.push_back(to_string(m));
    j["herald"].push_back({{"modes", modes}, {"count", c.count}});
  }
  const auto& enc = netlist.encoding;
  j["encoding"] = {
      {"target", {{"input", enc.target.input}, {"output", enc.target.output}}},
      {"control", {{"input", enc.control.input}, {"output", enc.control.output}}},
      {"program", enc.program},
  };
  return j;
}

Netlist netlist_from_json(const json& doc) {
  const std::string where = "netlist";
  Netlist n;
  if (!doc.is_object()) bad(where, "expected a JSON object");
  n.name = doc.contains("name") ? text(doc["name"], "netlist.name") : "netlist";

  const auto& ports = require(doc, "ports", where);
  if (!ports.is_array()) bad(where, "'ports' must be an array");
  for (const auto& p : ports) n.ports.push_back(text(p, "netlist.ports"));

  const auto& elements = require(doc, "elements", where);
  if (!elements.is_array()) bad(where, "'elements' must be an array");
  for (std::size_t i = 0; i < elements.size(); ++i) {
    n.elements.push_back(element_from_json(elements[i], "elements[" + std::to_string(i) + "]"));
  }

  const auto& sources = require(doc, "sources", where);
  if (!sources.is_array()) bad(where, "'sources' must be an array");
  for (const auto& s : sources) {
    const double photons = number_or(s, "photons", 1.0, "source");
    if (photons < 0 || photons != std::floor(photons)) bad("source", "'photons' must be a whole number");
    n.sources.push_back({text(require(s, "port", "source"), "source.port"),
                         static_cast<unsigned>(photons)});
  }

  const auto& herald = require(doc, "herald", where);
  if (!herald.is_array()) bad(where, "'herald' must be an array");
  for (const auto& c : herald) {
    CountConstraint cc;
    const auto& modes = require(c, "modes", "herald");
    if (!modes.is_array()) bad("herald", "'modes' must be an array");
    for (const auto& m : modes) cc.modes.push_back(mode_or_bad(m, "herald.modes"));
    const double count = number(require(c, "count", "herald"), "herald.count");
    if (count < 0 || count != std::floor(count)) bad("herald", "'count' must be a whole number");
    cc.count = static_cast<unsigned>(count);
    n.herald.constraints.push_back(std::move(cc));
  }

  const auto& enc = require(doc, "encoding", where);
  auto qubit_port = [&](const char* key) {
    const auto& q = require(enc, key, "encoding");
    const std::string w = std::string("encoding.") + key;
    return QubitPort{text(require(q, "input", w), w + ".input"),
                     text(require(q, "output", w), w + ".output")};
  };
  n.encoding.target = qubit_port("target");
  n.encoding.control = qubit_port("control");
  n.encoding.program = text(require(enc, "program", "encoding"), "encoding.program");
  return n;
}

Netlist load_netlist(const std::filesystem::path& path) {
  const json doc = parse_file(path);
  Netlist n;
  try {
    n = netlist_from_json(doc);
  } catch (const ValidationError& err) {
    throw ValidationError("'" + path.string() + "': " + err.what());
  }
  validate(n);
  return n;
}

void save_netlist(const Netlist& netlist, const std::filesystem::path& path) {
  write_text_file(path, netlist_to_json(netlist).dump(2) + "\n");
}

json physics_to_json(const PhysicsConfig& physics) {
  const auto& c = physics.coupler;
  const auto& g = c.geometry;
  json j;
  j["beat_h_um"] = c.beat_h_um;
  j["beat_v_um"] = c.beat_v_um;
  j["geometry"] = {
      {"waveguide_width_nm", g.waveguide_width_nm}, {"waveguide_height_nm", g.waveguide_height_nm},
      {"gap_nm", g.gap_nm},                         {"wavelength_um", g.wavelength_um},
      {"ring_radius_um", g.ring_radius_um},         {"ring_coupling_um", g.ring_coupling_um},
      {"notch_width_nm", g.notch_width_nm},         {"notch_height_nm", g.notch_height_nm},
  };
  j["sensitivities"] = json::object();
  for (auto d : {Dimension::Width, Dimension::Height, Dimension::Gap}) {
    j["sensitivities"][std::string(to_string(d))] = sensitivity_to_json(c.sensitivity(d));
  }
  json anchors = json::array();
  for (const auto& a : physics.notch.anchors) {
    anchors.push_back({{"length_um", a.length_um},
                       {"input", std::string(1, to_char(a.input))},
                       {"conversion", a.conversion}});
  }
  j["notch"] = {{"width_nm", physics.notch.notch_width_nm},
                {"height_nm", physics.notch.notch_height_nm},
                {"anchors", anchors}};
  return j;
}

PhysicsConfig physics_from_json(const json& doc) {
  const std::string where = "physics";
  if (!doc.is_object()) bad(where, "expected a JSON object");
  PhysicsConfig p;
  auto& c = p.coupler;
  c.beat_h_um = number_or(doc, "beat_h_um", c.beat_h_um, where);
  c.beat_v_um = number_or(doc, "beat_v_um", c.beat_v_um, where);

  if (doc.contains("geometry")) {
    const auto& g = doc["geometry"];
    const std::string w = "physics.geometry";
    if (!g.is_object()) bad(w, "expected an object");
    auto& geo = c.geometry;
    geo.waveguide_width_nm = number_or(g, "waveguide_width_nm", geo.waveguide_width_nm, w);
    geo.waveguide_height_nm = number_or(g, "waveguide_height_nm", geo.waveguide_height_nm, w);
    geo.gap_nm = number_or(g, "gap_nm", geo.gap_nm, w);
    geo.wavelength_um = number_or(g, "wavelength_um", geo.wavelength_um, w);
    geo.ring_radius_um = number_or(g, "ring_radius_um", geo.ring_radius_um, w);
    geo.ring_coupling_um = number_or(g, "ring_coupling_um", geo.ring_coupling_um, w);
    geo.notch_width_nm = number_or(g, "notch_width_nm", geo.notch_width_nm, w);
    geo.notch_height_nm = number_or(g, "notch_height_nm", geo.notch_height_nm, w);
  }

  if (doc.contains("sensitivities")) {
    const auto& s = doc["sensitivities"];
    const std::string w = "physics.sensitivities";
    if (!s.is_object()) bad(w, "expected an object");
    for (const auto& [key, value] : s.items()) {
      Dimension d;
      try {
        d = dimension_from_string(key);
      } catch (const std::exception& err) {
        bad(w, err.what());
      }
      const std::string wk = w + "." + key;
      if (!value.is_object()) bad(wk, "expected {\"h\": ..., \"v\": ...}");
      c.sensitivity(d) = {number_or(value, "h", 0.0, wk), number_or(value, "v", 0.0, wk)};
    }
  }

  if (doc.contains("notch")) {
    const auto& n = doc["notch"];
    const std::string w = "physics.notch";
    if (!n.is_object()) bad(w, "expected an object");
    p.notch.notch_width_nm = number_or(n, "width_nm", p.notch.notch_width_nm, w);
    p.notch.notch_height_nm = number_or(n, "height_nm", p.notch.notch_height_nm, w);
    if (n.contains("anchors")) {
      const auto& as = n["anchors"];
      if (!as.is_array()) bad(w, "'anchors' must be an array");
      p.notch.anchors.clear();
      for (const auto& a : as) {
        Polarization pol;
        try {
          pol = polarization_from_string(text(require(a, "input", w), w + ".input"));
        } catch (const ValidationError&) {
          throw;
        } catch (const std::exception& err) {
          bad(w, err.what());
        }
        p.notch.anchors.push_back({number(require(a, "length_um", w), w + ".length_um"), pol,
                                   number(require(a, "conversion", w), w + ".conversion")});
      }
    }
  }

  validate(p.coupler);
  validate(p.notch);
  return p;
}

PhysicsConfig load_physics(const std::filesystem::path& path) {
  const json doc = parse_file(path);
  try {
    return physics_from_json(doc);
  } catch (const ValidationError& err) {
    throw ValidationError("'" + path.string() + "': " + err.what());
  }
}

QubitAmplitudes parse_qubit(std::string_view input) {
  auto fail = [&]() -> ConfigError {
    return ConfigError("cannot parse qubit amplitudes '" + std::string(input) +
                       "' (expected re,im:re,im)");
  };
  auto parse_complex = [&](std::string_view part) {
    const auto comma = part.find(',');
    if (comma == std::string_view::npos) throw fail();
    double parts[2];
    const std::string_view pieces[2] = {part.substr(0, comma), part.substr(comma + 1)};
    for (int i = 0; i < 2; ++i) {
      const std::string s(pieces[i]);
      std::size_t used = 0;
      try {
        parts[i] = std::stod(s, &used);
      } catch (const std::exception&) {
        throw fail();
      }
      if (used != s.size() || !std::isfinite(parts[i])) throw fail();
    }
    return Amplitude(parts[0], parts[1]);
  };
  const auto colon = input.find(':');
  if (colon == std::string_view::npos) throw fail();
  return {parse_complex(input.substr(0, colon)), parse_complex(input.substr(colon + 1))};
}

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;  // drops the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) {
    throw ModelError("CSV row has " + std::to_string(cells.size()) + " cells, header has " +
                     std::to_string(header_.size()));
  }
  rows_.push_back(std::move(cells));
}

void CsvTable::write(std::ostream& out) const {
  auto cell = [&](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
      out << s;
      return;
    }
    out << '"';
    for (char ch : s) {
      if (ch == '"') out << '"';
      out << ch;
    }
    out << '"';
  };
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      cell(cells[i]);
    }
    out << '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
}

std::string CsvTable::str() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw ConfigError("failed writing '" + path.string() + "'");
}

}  // namespace cphase
