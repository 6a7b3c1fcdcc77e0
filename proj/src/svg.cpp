// Copyright 2026 The mlqcvv Authors
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

#include "mlqcvv/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "mlqcvv/common.hpp"

namespace mlqcvv::svg {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render(const Chart& chart) {
  const double left = 70;
  const double right = 20;
  const double top = 40;
  const double bottom = 55;
  const double pw = chart.width - left - right;
  const double ph = chart.height - top - bottom;

  auto tx = [&](double x) { return chart.log_x ? std::log10(x) : x; };
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  double ymin = xmin;
  double ymax = -xmin;
  for (const auto& s : chart.series) {
    require(s.x.size() == s.y.size(), "svg: series x/y size mismatch");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (chart.log_x && !(s.x[i] > 0)) continue;
      xmin = std::min(xmin, tx(s.x[i]));
      xmax = std::max(xmax, tx(s.x[i]));
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  }
  if (chart.vertical_line && (!chart.log_x || *chart.vertical_line > 0)) {
    xmin = std::min(xmin, tx(*chart.vertical_line));
    xmax = std::max(xmax, tx(*chart.vertical_line));
  }
  if (!(xmin <= xmax)) xmin = 0, xmax = 1;
  if (!(ymin <= ymax)) ymin = 0, ymax = 1;
  if (xmax - xmin < 1e-12) xmin -= 0.5, xmax += 0.5;
  if (ymax - ymin < 1e-12) ymin -= 0.5, ymax += 0.5;
  const double xpad = 0.03 * (xmax - xmin);
  const double ypad = 0.05 * (ymax - ymin);
  xmin -= xpad;
  xmax += xpad;
  ymin -= ypad;
  ymax += ypad;
  auto px = [&](double x) { return left + (tx(x) - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(chart.width) + "\" height=\"" +
         std::to_string(chart.height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + num(chart.width / 2.0) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" +
         escape(chart.title) + "</text>\n";
  out += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(pw) + "\" height=\"" + num(ph) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = xmin + (xmax - xmin) * i / 4.0;
    const double fy = ymin + (ymax - ymin) * i / 4.0;
    const double sx = left + pw * i / 4.0;
    const double sy = top + ph - ph * i / 4.0;
    out += "<text x=\"" + num(sx) + "\" y=\"" + num(top + ph + 16) + "\" text-anchor=\"middle\">" +
           tick(chart.log_x ? std::pow(10.0, fx) : fx) + "</text>\n";
    out += "<text x=\"" + num(left - 6) + "\" y=\"" + num(sy + 4) + "\" text-anchor=\"end\">" + tick(fy) +
           "</text>\n";
  }
  out += "<text x=\"" + num(left + pw / 2) + "\" y=\"" + num(chart.height - 12.0) + "\" text-anchor=\"middle\">" +
         escape(chart.x_label) + "</text>\n";
  out += "<text transform=\"translate(16," + num(top + ph / 2) + ") rotate(-90)\" text-anchor=\"middle\">" +
         escape(chart.y_label) + "</text>\n";

  for (const auto& s : chart.series) {
    if (s.line) {
      out += "<polyline fill=\"none\" stroke=\"" + escape(s.color) + "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (chart.log_x && !(s.x[i] > 0)) continue;
        out += num(px(s.x[i])) + "," + num(py(s.y[i])) + " ";
      }
      out += "\"/>\n";
    }
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (chart.log_x && !(s.x[i] > 0)) continue;
      out += "<circle cx=\"" + num(px(s.x[i])) + "\" cy=\"" + num(py(s.y[i])) + "\" r=\"" + (s.line ? "3" : "1.5") +
             "\" fill=\"" + escape(s.color) + "\" fill-opacity=\"0.7\"/>\n";
    }
  }
  if (chart.vertical_line && (!chart.log_x || *chart.vertical_line > 0)) {
    const double x = px(*chart.vertical_line);
    out += "<line x1=\"" + num(x) + "\" y1=\"" + num(top) + "\" x2=\"" + num(x) + "\" y2=\"" + num(top + ph) +
           "\" stroke=\"gray\" stroke-dasharray=\"4,3\"/>\n";
    out += "<text x=\"" + num(x + 4) + "\" y=\"" + num(top + 14) + "\" fill=\"gray\">" +
           escape(chart.vertical_line_label) + "</text>\n";
  }
  double ly = top + 14;
  for (const auto& s : chart.series) {
    if (s.name.empty()) continue;
    out += "<rect x=\"" + num(left + pw - 150) + "\" y=\"" + num(ly - 9) + "\" width=\"10\" height=\"10\" fill=\"" +
           escape(s.color) + "\"/>\n";
    out += "<text x=\"" + num(left + pw - 135) + "\" y=\"" + num(ly) + "\">" + escape(s.name) + "</text>\n";
    ly += 16;
  }
  out += "</svg>\n";
  return out;
}

}  // namespace mlqcvv::svg
