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

// File formats: netlist and physics JSON, CSV tables, qubit amplitude text.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <json.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "cphase/circuit.hpp"
#include "cphase/design.hpp"

namespace cphase {

// Netlists. Structural problems in the document (missing keys, wrong types,
// unknown kinds) raise ValidationError; an unreadable or non-JSON file raises
// ConfigError naming the path.
nlohmann::json netlist_to_json(const Netlist& netlist);
Netlist netlist_from_json(const nlohmann::json& doc);
Netlist load_netlist(const std::filesystem::path& path);
void save_netlist(const Netlist& netlist, const std::filesystem::path& path);

struct PhysicsConfig {
  CouplerPhysics coupler;
  NotchCalibration notch = default_notch_calibration();
};

nlohmann::json physics_to_json(const PhysicsConfig& physics);
PhysicsConfig physics_from_json(const nlohmann::json& doc);
PhysicsConfig load_physics(const std::filesystem::path& path);

/// "re,im:re,im" -> alpha|0> + beta|1>. Throws ConfigError.
QubitAmplitudes parse_qubit(std::string_view text);

/// printf("%.12g"), with negative zero printed as 0.
std::string format_number(double value);

/// Comma-separated, LF-terminated, header first. Cells containing commas or
/// quotes are quoted.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
  /// Throws ModelError on a width mismatch.
  void add_row(std::vector<std::string> cells);
  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }
  void write(std::ostream& out) const;
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Writes `content` verbatim (binary mode, so LF stays LF). ConfigError on
/// failure.
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace cphase
