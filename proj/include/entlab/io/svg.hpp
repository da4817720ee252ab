#pragma once
// Minimal static SVG line charts: fixed canvas, fixed axes (never autoscaled,
// so panels of the same figure family share ranges), one polyline per series,
// and a legend. Output is plain text produced through one formatting path,
// hence deterministic.

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "entlab/errors.hpp"

namespace entlab {

struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct SvgAxes {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  double xmin = 0.0, xmax = 1.0;
  double ymin = 0.0, ymax = 1.0;
  int xticks = 5;  // number of intervals
  int yticks = 5;
};

namespace detail {

inline std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return std::string(buf);
}

inline std::string svg_tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return std::string(buf);
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace detail

// Render the chart to `out`. Points outside the axis ranges are clamped to
// the plot frame rather than dropped, keeping polylines connected.
inline void write_svg_chart(std::ostream& out, const SvgAxes& axes,
                            const std::vector<SvgSeries>& series) {
  if (!(axes.xmax > axes.xmin) || !(axes.ymax > axes.ymin))
    throw InvalidArgument("svg chart: empty axis range");

  const double width = 720.0, height = 540.0;
  const double left = 78.0, right = 24.0, top = 48.0, bottom = 64.0;
  const double pw = width - left - right;
  const double ph = height - top - bottom;

  const auto px = [&](double x) {
    const double t = (x - axes.xmin) / (axes.xmax - axes.xmin);
    return left + pw * std::clamp(t, 0.0, 1.0);
  };
  const auto py = [&](double y) {
    const double t = (y - axes.ymin) / (axes.ymax - axes.ymin);
    return top + ph * (1.0 - std::clamp(t, 0.0, 1.0));
  };

  static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                   "#ff7f0e", "#9467bd", "#8c564b",
                                   "#17becf", "#7f7f7f"};
  constexpr int kPaletteSize = 8;

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << (int)width
      << "\" height=\"" << (int)height << "\" viewBox=\"0 0 " << (int)width
      << " " << (int)height << "\">\n";
  out << "<rect width=\"" << (int)width << "\" height=\"" << (int)height
      << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << detail::svg_num(left + pw / 2) << "\" y=\"28\" "
         "text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"17\">"
      << detail::xml_escape(axes.title) << "</text>\n";

  // Grid and ticks.
  out << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#333\">\n";
  for (int i = 0; i <= axes.xticks; ++i) {
    const double xv = axes.xmin + (axes.xmax - axes.xmin) * i / axes.xticks;
    const std::string X = detail::svg_num(px(xv));
    out << "<line x1=\"" << X << "\" y1=\"" << detail::svg_num(top)
        << "\" x2=\"" << X << "\" y2=\"" << detail::svg_num(top + ph)
        << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << X << "\" y=\"" << detail::svg_num(top + ph + 18)
        << "\" text-anchor=\"middle\">" << detail::svg_tick(xv) << "</text>\n";
  }
  for (int i = 0; i <= axes.yticks; ++i) {
    const double yv = axes.ymin + (axes.ymax - axes.ymin) * i / axes.yticks;
    const std::string Y = detail::svg_num(py(yv));
    out << "<line x1=\"" << detail::svg_num(left) << "\" y1=\"" << Y
        << "\" x2=\"" << detail::svg_num(left + pw) << "\" y2=\"" << Y
        << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << detail::svg_num(left - 8) << "\" y=\""
        << detail::svg_num(py(yv) + 4) << "\" text-anchor=\"end\">"
        << detail::svg_tick(yv) << "</text>\n";
  }
  out << "</g>\n";

  // Frame and axis labels.
  out << "<rect x=\"" << detail::svg_num(left) << "\" y=\""
      << detail::svg_num(top) << "\" width=\"" << detail::svg_num(pw)
      << "\" height=\"" << detail::svg_num(ph)
      << "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1.5\"/>\n";
  out << "<text x=\"" << detail::svg_num(left + pw / 2) << "\" y=\""
      << detail::svg_num(height - 16)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\">"
      << detail::xml_escape(axes.xlabel) << "</text>\n";
  out << "<text x=\"22\" y=\"" << detail::svg_num(top + ph / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\" transform=\"rotate(-90 22 "
      << detail::svg_num(top + ph / 2) << ")\">"
      << detail::xml_escape(axes.ylabel) << "</text>\n";

  // Series.
  for (size_t s = 0; s < series.size(); ++s) {
    const SvgSeries& sr = series[s];
    if (sr.x.size() != sr.y.size())
      throw InvalidArgument("svg chart: series '" + sr.label +
                            "' has mismatched x/y lengths");
    const char* color = kPalette[s % kPaletteSize];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.8\" points=\"";
    for (size_t i = 0; i < sr.x.size(); ++i) {
      if (i) out << ' ';
      out << detail::svg_num(px(sr.x[i])) << ',' << detail::svg_num(py(sr.y[i]));
    }
    out << "\"/>\n";
  }

  // Legend, top-right inside the frame.
  out << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (size_t s = 0; s < series.size(); ++s) {
    const double ly = top + 16.0 + 18.0 * static_cast<double>(s);
    const double lx = left + pw - 170.0;
    const char* color = kPalette[s % kPaletteSize];
    out << "<line x1=\"" << detail::svg_num(lx) << "\" y1=\""
        << detail::svg_num(ly - 4) << "\" x2=\"" << detail::svg_num(lx + 26)
        << "\" y2=\"" << detail::svg_num(ly - 4) << "\" stroke=\"" << color
        << "\" stroke-width=\"2.5\"/>\n";
    out << "<text x=\"" << detail::svg_num(lx + 32) << "\" y=\""
        << detail::svg_num(ly) << "\">" << detail::xml_escape(series[s].label)
        << "</text>\n";
  }
  out << "</g>\n</svg>\n";
}

}  // namespace entlab
