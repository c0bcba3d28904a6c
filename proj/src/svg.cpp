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

#include "cphase/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "cphase/errors.hpp"

namespace cphase {
namespace {

constexpr double kWidth = 720.0;
constexpr double kPanelHeight = 260.0;
constexpr double kLeft = 90.0;
constexpr double kRight = 170.0;
constexpr double kTop = 50.0;
constexpr double kGap = 40.0;
constexpr double kBottom = 50.0;
constexpr int kTicks = 5;

std::string num(double v) {
  if (v == 0.0) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  // Flat data still needs a visible extent.
  void pad() {
    if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
      const double d = std::max(1e-9, 0.05 * std::abs(hi));
      lo -= d;
      hi += d;
    }
  }
};

}  // namespace

std::string render_svg(const Chart& chart) {
  Range xr;
  for (const auto& p : chart.panels) {
    for (const auto& s : p.series) {
      if (s.x.empty() || s.x.size() != s.y.size()) {
        throw ModelError("series '" + s.label + "' needs equally many x and y values");
      }
      for (double v : s.x) xr.add(v);
    }
  }
  if (chart.panels.empty() || !std::isfinite(xr.lo)) throw ModelError("chart has no data");
  xr.pad();

  const double plot_w = kWidth - kLeft - kRight;
  const double height = kTop + kBottom + static_cast<double>(chart.panels.size()) * kPanelHeight +
                        static_cast<double>(chart.panels.size() - 1) * kGap;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\""
     << num(height) << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(height)
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << num(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
     << escape(chart.title) << "</text>\n";

  auto sx = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };

  for (std::size_t pi = 0; pi < chart.panels.size(); ++pi) {
    const auto& panel = chart.panels[pi];
    const double top = kTop + static_cast<double>(pi) * (kPanelHeight + kGap);
    Range yr;
    for (const auto& s : panel.series) {
      for (double v : s.y) yr.add(v);
    }
    yr.pad();
    auto sy = [&](double y) { return top + kPanelHeight - (y - yr.lo) / (yr.hi - yr.lo) * kPanelHeight; };

    os << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(top) << "\" width=\"" << num(plot_w)
       << "\" height=\"" << num(kPanelHeight) << "\" fill=\"none\" stroke=\"#444\"/>\n";
    for (int t = 0; t <= kTicks; ++t) {
      const double fy = yr.lo + (yr.hi - yr.lo) * t / kTicks;
      const double fx = xr.lo + (xr.hi - xr.lo) * t / kTicks;
      os << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(sy(fy)) << "\" x2=\""
         << num(kLeft + plot_w) << "\" y2=\"" << num(sy(fy)) << "\" stroke=\"#ddd\"/>\n";
      os << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(sy(fy) + 4)
         << "\" text-anchor=\"end\">" << num(fy) << "</text>\n";
      os << "<text x=\"" << num(sx(fx)) << "\" y=\"" << num(top + kPanelHeight + 16)
         << "\" text-anchor=\"middle\">" << num(fx) << "</text>\n";
    }
    os << "<text transform=\"translate(" << num(18) << ' ' << num(top + kPanelHeight / 2)
       << ") rotate(-90)\" text-anchor=\"middle\">" << escape(panel.y_label) << "</text>\n";

    for (std::size_t si = 0; si < panel.series.size(); ++si) {
      const auto& s = panel.series[si];
      os << "<polyline fill=\"none\" stroke=\"" << escape(s.color) << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (i) os << ' ';
        os << num(sx(s.x[i])) << ',' << num(sy(s.y[i]));
      }
      os << "\"/>\n";
      const double ly = top + 16 + 18 * static_cast<double>(si);
      os << "<line x1=\"" << num(kLeft + plot_w + 12) << "\" y1=\"" << num(ly) << "\" x2=\""
         << num(kLeft + plot_w + 32) << "\" y2=\"" << num(ly) << "\" stroke=\"" << escape(s.color)
         << "\" stroke-width=\"2\"/>\n";
      os << "<text x=\"" << num(kLeft + plot_w + 38) << "\" y=\"" << num(ly + 4) << "\">"
         << escape(s.label) << "</text>\n";
    }
  }
  const double last_bottom = height - kBottom;
  os << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"" << num(last_bottom + 38)
     << "\" text-anchor=\"middle\">" << escape(chart.x_label) << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace cphase
