/*
 * Copyright 2026 The membudget Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "membudget/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

#include "membudget/errors.hpp"

namespace membudget {
namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
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

std::string render_line_chart(const std::vector<AggregateRow>& rows, const PlotOptions& options) {
  if (rows.empty()) throw ValidationError("nothing to plot: no aggregated rows");

  std::vector<std::string> groups;
  std::map<std::string, std::vector<const AggregateRow*>> series;
  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  double y_min = x_min, y_max = -x_min;
  for (const auto& r : rows) {
    if (!series.contains(r.group)) groups.push_back(r.group);
    series[r.group].push_back(&r);
    const double se = r.summary.standard_error.value_or(0.0);
    x_min = std::min(x_min, r.x);
    x_max = std::max(x_max, r.x);
    y_min = std::min(y_min, r.summary.mean - se);
    y_max = std::max(y_max, r.summary.mean + se);
  }
  if (x_max == x_min) x_max = x_min + 1.0;
  if (y_max == y_min) {
    y_min -= 0.5;
    y_max += 0.5;
  }
  const double pad = 0.05 * (y_max - y_min);
  y_min -= pad;
  y_max += pad;

  const double left = 70, right = 170, top = 40, bottom = 60;
  const double pw = options.width - left - right;
  const double ph = options.height - top - bottom;
  auto px = [&](double x) { return left + (x - x_min) / (x_max - x_min) * pw; };
  auto py = [&](double y) { return top + (y_max - y) / (y_max - y_min) * ph; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(options.width) + "\" height=\"" +
         std::to_string(options.height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + num(options.width / 2.0) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" +
         escape(options.title) + "</text>\n";

  // Axes and ticks.
  svg += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(pw) + "\" height=\"" + num(ph) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = x_min + (x_max - x_min) * i / 5.0;
    const double yv = y_min + (y_max - y_min) * i / 5.0;
    svg += "<text x=\"" + num(px(xv)) + "\" y=\"" + num(top + ph + 18) + "\" text-anchor=\"middle\">" + tick(xv) +
           "</text>\n";
    svg += "<text x=\"" + num(left - 6) + "\" y=\"" + num(py(yv) + 4) + "\" text-anchor=\"end\">" +
           tick(std::round(yv * 1000.0) / 1000.0) + "</text>\n";
    svg += "<line x1=\"" + num(left) + "\" x2=\"" + num(left + pw) + "\" y1=\"" + num(py(yv)) + "\" y2=\"" +
           num(py(yv)) + "\" stroke=\"#dddddd\"/>\n";
  }
  svg += "<text x=\"" + num(left + pw / 2) + "\" y=\"" + num(options.height - 18.0) + "\" text-anchor=\"middle\">" +
         escape(options.x_label) + "</text>\n";
  svg += "<text transform=\"translate(18," + num(top + ph / 2) + ") rotate(-90)\" text-anchor=\"middle\">" +
         escape(options.y_label) + "</text>\n";

  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const auto& pts = series[groups[gi]];
    const std::string color = kPalette[gi % std::size(kPalette)];
    std::string upper, lower, line;
    for (const auto* r : pts) {
      const double se = r->summary.standard_error.value_or(0.0);
      upper += num(px(r->x)) + "," + num(py(r->summary.mean + se)) + " ";
      line += num(px(r->x)) + "," + num(py(r->summary.mean)) + " ";
    }
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
      const double se = (*it)->summary.standard_error.value_or(0.0);
      lower += num(px((*it)->x)) + "," + num(py((*it)->summary.mean - se)) + " ";
    }
    svg += "<polygon points=\"" + upper + lower + "\" fill=\"" + color + "\" fill-opacity=\"0.2\" stroke=\"none\"/>\n";
    svg += "<polyline points=\"" + line + "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    const double ly = top + 14 + 18.0 * static_cast<double>(gi);
    svg += "<line x1=\"" + num(left + pw + 12) + "\" x2=\"" + num(left + pw + 36) + "\" y1=\"" + num(ly - 4) +
           "\" y2=\"" + num(ly - 4) + "\" stroke=\"" + color + "\" stroke-width=\"3\"/>\n";
    svg += "<text x=\"" + num(left + pw + 42) + "\" y=\"" + num(ly) + "\">" + escape(groups[gi]) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace membudget
