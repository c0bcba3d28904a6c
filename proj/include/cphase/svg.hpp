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

// Minimal deterministic SVG line charts.

#pragma once

#include <string>
#include <vector>

namespace cphase {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
};

/// One vertically stacked plot area with its own y axis.
struct Panel {
  std::string y_label;
  std::vector<Series> series;
};

struct Chart {
  std::string title;
  std::string x_label;
  std::vector<Panel> panels;
};

/// Throws ModelError when a series has mismatched or empty coordinates.
std::string render_svg(const Chart& chart);

}  // namespace cphase
