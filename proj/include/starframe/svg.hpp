#pragma once

// Self-contained SVG rendering of the convergence sweep: truncation order on
// the x-axis, log10 of the time-averaged infidelity on the y-axis, one
// marker series per frame, and a dashed horizontal line marking the floor
// reached by the untruncated pipeline on the same grid.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "starframe/rabi.hpp"

namespace starframe {

namespace detail {

inline std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

struct SeriesStyle {
  const char* color;
  const char* marker;  // "circle" | "square" | "diamond" | "star"
};

inline SeriesStyle series_style(const std::string& frame) {
  if (frame == "lab") return {"#d62728", "circle"};
  if (frame == "std") return {"#000000", "square"};
  if (frame == "std0") return {"#777777", "diamond"};
  return {"#1f77b4", "star"};  // biframe
}

inline std::string marker_svg(const std::string& kind, double x, double y,
                              const std::string& color) {
  std::string out;
  if (kind == "circle") {
    out = "<circle cx=\"" + fmt2(x) + "\" cy=\"" + fmt2(y) + "\" r=\"4\" fill=\"" + color +
          "\"/>";
  } else if (kind == "square") {
    out = "<rect x=\"" + fmt2(x - 3.5) + "\" y=\"" + fmt2(y - 3.5) +
          "\" width=\"7\" height=\"7\" fill=\"" + color + "\"/>";
  } else if (kind == "diamond") {
    out = "<polygon points=\"" + fmt2(x) + "," + fmt2(y - 4.5) + " " + fmt2(x + 4.5) + "," +
          fmt2(y) + " " + fmt2(x) + "," + fmt2(y + 4.5) + " " + fmt2(x - 4.5) + "," + fmt2(y) +
          "\" fill=\"" + color + "\"/>";
  } else {  // star
    const double pi = 3.14159265358979323846;
    std::string pts;
    for (int k = 0; k < 10; ++k) {
      const double r = (k % 2 == 0) ? 6.0 : 2.6;
      const double ang = -0.5 * pi + k * pi / 5.0;
      if (k) pts += ' ';
      pts += fmt2(x + r * std::cos(ang)) + "," + fmt2(y + r * std::sin(ang));
    }
    out = "<polygon points=\"" + pts + "\" fill=\"" + color + "\"/>";
  }
  return out;
}

}  // namespace detail

inline std::string figure_svg(const std::vector<ConvergenceRecord>& records,
                              double floor_epsilon) {
  const double width = 800, height = 600;
  const double left = 70, right = 620, top = 40, bottom = 540;

  auto safe_log = [](double eps) { return std::log10(eps > 0.0 ? eps : 1e-300); };

  int max_m = 1;
  double y_min = safe_log(floor_epsilon), y_max = safe_log(floor_epsilon);
  for (const ConvergenceRecord& r : records) {
    max_m = std::max(max_m, r.m);
    y_min = std::min(y_min, safe_log(r.epsilon));
    y_max = std::max(y_max, safe_log(r.epsilon));
  }
  double lo = std::floor(y_min) - 0.5;
  double hi = std::ceil(y_max) + 0.5;
  if (hi - lo < 1.0) {
    lo -= 0.5;
    hi += 0.5;
  }
  auto xpos = [&](double m) { return left + (right - left) * m / std::max(1, max_m); };
  auto ypos = [&](double lg) { return bottom - (bottom - top) * (lg - lo) / (hi - lo); };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::fmt2(width) +
         "\" height=\"" + detail::fmt2(height) + "\" viewBox=\"0 0 800 600\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"#ffffff\"/>\n";

  // Axes.
  svg += "<line x1=\"" + detail::fmt2(left) + "\" y1=\"" + detail::fmt2(bottom) + "\" x2=\"" +
         detail::fmt2(right) + "\" y2=\"" + detail::fmt2(bottom) +
         "\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n";
  svg += "<line x1=\"" + detail::fmt2(left) + "\" y1=\"" + detail::fmt2(top) + "\" x2=\"" +
         detail::fmt2(left) + "\" y2=\"" + detail::fmt2(bottom) +
         "\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n";

  // X ticks (integers, thinned if the sweep is long).
  const int x_step = max_m > 16 ? 2 : 1;
  for (int m = 0; m <= max_m; m += x_step) {
    const double x = xpos(m);
    svg += "<line x1=\"" + detail::fmt2(x) + "\" y1=\"" + detail::fmt2(bottom) + "\" x2=\"" +
           detail::fmt2(x) + "\" y2=\"" + detail::fmt2(bottom + 6) +
           "\" stroke=\"#000000\"/>\n";
    svg += "<text x=\"" + detail::fmt2(x) + "\" y=\"" + detail::fmt2(bottom + 22) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" +
           std::to_string(m) + "</text>\n";
  }
  svg += "<text x=\"" + detail::fmt2((left + right) / 2) + "\" y=\"" +
         detail::fmt2(bottom + 45) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">truncation "
         "order m</text>\n";

  // Y ticks at integer decades.
  for (int dec = static_cast<int>(std::ceil(lo)); dec <= static_cast<int>(std::floor(hi));
       ++dec) {
    const double y = ypos(dec);
    svg += "<line x1=\"" + detail::fmt2(left - 6) + "\" y1=\"" + detail::fmt2(y) + "\" x2=\"" +
           detail::fmt2(left) + "\" y2=\"" + detail::fmt2(y) + "\" stroke=\"#000000\"/>\n";
    svg += "<text x=\"" + detail::fmt2(left - 10) + "\" y=\"" + detail::fmt2(y + 5) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"13\">1e" +
           std::to_string(dec) + "</text>\n";
  }
  svg += "<text x=\"18\" y=\"" + detail::fmt2((top + bottom) / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\" "
         "transform=\"rotate(-90 18 " +
         detail::fmt2((top + bottom) / 2) + ")\">time-averaged infidelity</text>\n";

  // Floor line.
  const double yf = ypos(safe_log(floor_epsilon));
  svg += "<line x1=\"" + detail::fmt2(left) + "\" y1=\"" + detail::fmt2(yf) + "\" x2=\"" +
         detail::fmt2(right) + "\" y2=\"" + detail::fmt2(yf) +
         "\" stroke=\"#555555\" stroke-width=\"1.2\" stroke-dasharray=\"6,4\"/>\n";
  svg += "<text x=\"" + detail::fmt2(right - 4) + "\" y=\"" + detail::fmt2(yf - 6) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" "
         "fill=\"#555555\">untruncated-pipeline floor</text>\n";

  // Series: group records by frame, keep m-order.
  std::map<std::string, std::vector<const ConvergenceRecord*>> series;
  for (const ConvergenceRecord& r : records) series[r.frame].push_back(&r);
  for (auto& [frame, pts] : series) {
    std::sort(pts.begin(), pts.end(),
              [](const ConvergenceRecord* a, const ConvergenceRecord* b) { return a->m < b->m; });
    const detail::SeriesStyle style = detail::series_style(frame);
    std::string poly;
    for (const ConvergenceRecord* r : pts) {
      if (!poly.empty()) poly += ' ';
      poly += detail::fmt2(xpos(r->m)) + "," + detail::fmt2(ypos(safe_log(r->epsilon)));
    }
    svg += "<polyline points=\"" + poly + "\" fill=\"none\" stroke=\"" + style.color +
           "\" stroke-width=\"1.2\"/>\n";
    for (const ConvergenceRecord* r : pts)
      svg += detail::marker_svg(style.marker, xpos(r->m), ypos(safe_log(r->epsilon)),
                                style.color) +
             "\n";
  }

  // Legend.
  double ly = top + 10;
  for (const auto& [frame, pts] : series) {
    (void)pts;
    const detail::SeriesStyle style = detail::series_style(frame);
    svg += detail::marker_svg(style.marker, right + 30, ly, style.color) + "\n";
    svg += "<text x=\"" + detail::fmt2(right + 45) + "\" y=\"" + detail::fmt2(ly + 5) +
           "\" font-family=\"sans-serif\" font-size=\"14\">" + frame + "</text>\n";
    ly += 26;
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace starframe
