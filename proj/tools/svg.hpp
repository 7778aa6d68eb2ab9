#pragma once

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

// Minimal static SVG charts built from polyline, circle and text elements.

namespace abstractrank::cli::svg {

struct Frame {
  double width = 640, height = 420, margin = 56;
  double x_min = 0, x_max = 1, y_min = 0, y_max = 1;

  double px(double x) const { return margin + (x - x_min) / (x_max - x_min) * (width - 2 * margin); }
  double py(double y) const { return height - margin - (y - y_min) / (y_max - y_min) * (height - 2 * margin); }
};

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

inline void fit_range(double& lo, double& hi) {
  if (hi <= lo) {
    lo -= 1.0;
    hi += 1.0;
  } else {
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
}

inline void header(std::ostringstream& out, const Frame& f, const std::string& title, const std::string& x_label,
                   const std::string& y_label) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f.width << "\" height=\"" << f.height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << f.width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
      << "</text>\n";
  out << "<polyline fill=\"none\" stroke=\"black\" points=\"" << num(f.margin) << ',' << num(f.margin) << ' '
      << num(f.margin) << ',' << num(f.height - f.margin) << ' ' << num(f.width - f.margin) << ','
      << num(f.height - f.margin) << "\"/>\n";
  out << "<text x=\"" << f.width / 2 << "\" y=\"" << f.height - 14 << "\" text-anchor=\"middle\">" << escape(x_label)
      << "</text>\n";
  out << "<text x=\"16\" y=\"" << f.height / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << f.height / 2 << ")\">" << escape(y_label) << "</text>\n";
  out << "<text x=\"" << f.margin << "\" y=\"" << f.height - f.margin + 16 << "\" text-anchor=\"middle\">"
      << num(f.x_min) << "</text>\n";
  out << "<text x=\"" << f.width - f.margin << "\" y=\"" << f.height - f.margin + 16 << "\" text-anchor=\"middle\">"
      << num(f.x_max) << "</text>\n";
  out << "<text x=\"" << f.margin - 6 << "\" y=\"" << f.height - f.margin << "\" text-anchor=\"end\">"
      << num(f.y_min) << "</text>\n";
  out << "<text x=\"" << f.margin - 6 << "\" y=\"" << f.margin + 4 << "\" text-anchor=\"end\">" << num(f.y_max)
      << "</text>\n";
}

/// Line chart with markers; the point at `highlight` (if any) is drawn red.
inline std::string line_chart(const std::vector<double>& xs, const std::vector<double>& ys, const std::string& title,
                              const std::string& x_label, const std::string& y_label, long highlight = -1) {
  Frame f;
  f.x_min = *std::min_element(xs.begin(), xs.end());
  f.x_max = *std::max_element(xs.begin(), xs.end());
  f.y_min = *std::min_element(ys.begin(), ys.end());
  f.y_max = *std::max_element(ys.begin(), ys.end());
  fit_range(f.x_min, f.x_max);
  fit_range(f.y_min, f.y_max);
  std::ostringstream out;
  header(out, f, title, x_label, y_label);
  out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? " " : "") << num(f.px(xs[i])) << ',' << num(f.py(ys[i]));
  out << "\"/>\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const bool hot = static_cast<long>(i) == highlight;
    out << "<circle cx=\"" << num(f.px(xs[i])) << "\" cy=\"" << num(f.py(ys[i])) << "\" r=\"" << (hot ? 6 : 4)
        << "\" fill=\"" << (hot ? "crimson" : "steelblue") << "\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

/// Scatter plot; `groups[i]` selects the color of point i.
inline std::string scatter(const std::vector<double>& xs, const std::vector<double>& ys, const std::vector<int>& groups,
                           const std::string& title, const std::string& x_label, const std::string& y_label) {
  static constexpr std::array<const char*, 10> palette{"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                                       "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  Frame f;
  if (!xs.empty()) {
    f.x_min = *std::min_element(xs.begin(), xs.end());
    f.x_max = *std::max_element(xs.begin(), xs.end());
    f.y_min = *std::min_element(ys.begin(), ys.end());
    f.y_max = *std::max_element(ys.begin(), ys.end());
  }
  fit_range(f.x_min, f.x_max);
  fit_range(f.y_min, f.y_max);
  std::ostringstream out;
  header(out, f, title, x_label, y_label);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto g = static_cast<std::size_t>(std::max(groups[i], 0)) % palette.size();
    out << "<circle cx=\"" << num(f.px(xs[i])) << "\" cy=\"" << num(f.py(ys[i])) << "\" r=\"3\" fill=\""
        << palette[g] << "\" fill-opacity=\"0.7\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace abstractrank::cli::svg
