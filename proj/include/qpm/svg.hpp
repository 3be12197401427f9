// Copyright 2026 The qpm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Bare-bones SVG output: horizontal bar charts for index distributions and
// polylines for amplification curves. No styling guarantees.

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qpm::svg {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

/// Escapes the five XML special characters.
inline std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string bar_chart(const std::string& title, const std::vector<std::string>& labels,
                             const std::vector<double>& values) {
  const double row_h = 22.0;
  const double left = 80.0;
  const double width = 420.0;
  const double top = 30.0;
  if (values.empty() || labels.size() != values.size())
    throw std::invalid_argument("bar_chart needs one label per value and at least one value");
  const double vmax = std::max(1e-12, *std::max_element(values.begin(), values.end()));
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(left + width + 90) << "\" height=\""
    << num(top + row_h * static_cast<double>(values.size()) + 10) << "\">\n";
  o << "<text x=\"4\" y=\"18\" font-family=\"sans-serif\" font-size=\"13\">" << escape(title) << "</text>\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double y = top + row_h * static_cast<double>(i);
    o << "<text x=\"4\" y=\"" << num(y + 15) << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(labels[i])
      << "</text>\n";
    o << "<rect x=\"" << num(left) << "\" y=\"" << num(y + 3) << "\" width=\"" << num(width * values[i] / vmax)
      << "\" height=\"" << num(row_h - 6) << "\" fill=\"#4a7ab5\"/>\n";
    o << "<text x=\"" << num(left + width * values[i] / vmax + 4) << "\" y=\"" << num(y + 15)
      << "\" font-family=\"sans-serif\" font-size=\"11\">" << num(values[i]) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
  int color = -1;  // palette slot; -1 picks by series position
};

inline std::string line_chart(const std::string& title, const std::vector<Series>& series) {
  const double w = 520.0;
  const double h = 320.0;
  const double pad = 40.0;
  double xmax = 1e-12;
  double ymax = 1e-12;
  for (const auto& s : series) {
    for (double v : s.x) xmax = std::max(xmax, v);
    for (double v : s.y) ymax = std::max(ymax, v);
  }
  static const char* kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w + 2 * pad) << "\" height=\"" << num(h + 2 * pad)
    << "\">\n";
  o << "<text x=\"4\" y=\"18\" font-family=\"sans-serif\" font-size=\"13\">" << escape(title) << "</text>\n";
  o << "<rect x=\"" << num(pad) << "\" y=\"" << num(pad) << "\" width=\"" << num(w) << "\" height=\"" << num(h)
    << "\" fill=\"none\" stroke=\"#999\"/>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    o << "<polyline fill=\"none\" stroke=\"" << kColors[(s.color < 0 ? k : static_cast<std::size_t>(s.color)) % 8] << "\"" << (s.dashed ? " stroke-dasharray=\"4 3\"" : "")
      << " points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      o << num(pad + w * s.x[i] / xmax) << ',' << num(pad + h - h * s.y[i] / ymax) << ' ';
    }
    o << "\"><title>" << escape(s.name) << "</title></polyline>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace qpm::svg
