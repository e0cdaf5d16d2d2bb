#include "svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <vector>

namespace spinchain::cli {
namespace {

constexpr double kWidth = 760.0;
constexpr double kHeight = 500.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 170.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 60.0;

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                 "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};

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

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  bool log = false;
  double pixel_lo = 0.0;
  double pixel_hi = 1.0;

  double transform(double v) const { return log ? std::log10(v) : v; }
  double to_pixel(double v) const {
    const double a = transform(lo);
    const double b = transform(hi);
    const double t = b > a ? (transform(v) - a) / (b - a) : 0.5;
    return pixel_lo + t * (pixel_hi - pixel_lo);
  }
};

Axis make_axis(const std::vector<double>& values, bool log, double pixel_lo, double pixel_hi) {
  Axis axis;
  axis.log = log;
  axis.pixel_lo = pixel_lo;
  axis.pixel_hi = pixel_hi;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double v : values) {
    if (!std::isfinite(v) || (log && v <= 0.0)) continue;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!std::isfinite(lo)) {
    lo = log ? 1.0 : 0.0;
    hi = log ? 10.0 : 1.0;
  }
  if (hi == lo) {
    if (log) {
      lo /= 10.0;
      hi *= 10.0;
    } else {
      const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
      lo -= pad;
      hi += pad;
    }
  }
  axis.lo = lo;
  axis.hi = hi;
  return axis;
}

std::vector<double> ticks(const Axis& axis) {
  std::vector<double> out;
  if (axis.log) {
    const int first = static_cast<int>(std::ceil(std::log10(axis.lo) - 1e-9));
    const int last = static_cast<int>(std::floor(std::log10(axis.hi) + 1e-9));
    for (int e = first; e <= last; ++e) out.push_back(std::pow(10.0, e));
    return out;
  }
  const double span = axis.hi - axis.lo;
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) break;
  }
  const double start = std::ceil(axis.lo / step - 1e-9) * step;
  for (double v = start; v <= axis.hi + step * 1e-9; v += step) {
    out.push_back(std::abs(v) < step * 1e-9 ? 0.0 : v);
  }
  return out;
}

// Piecewise-linear approximation of the viridis colour map.
std::string colour(double t) {
  static constexpr std::array<std::array<double, 3>, 5> stops = {{{68, 1, 84},
                                                                   {59, 82, 139},
                                                                   {33, 145, 140},
                                                                   {94, 201, 98},
                                                                   {253, 231, 37}}};
  t = std::clamp(std::isfinite(t) ? t : 0.0, 0.0, 1.0) * (stops.size() - 1);
  const auto k = std::min(static_cast<std::size_t>(t), stops.size() - 2);
  const double f = t - static_cast<double>(k);
  char buf[8];
  int rgb[3];
  for (int c = 0; c < 3; ++c) {
    rgb[c] = static_cast<int>(std::lround(stops[k][c] + f * (stops[k + 1][c] - stops[k][c])));
  }
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
  return buf;
}

void draw_axes(std::ostringstream& os, const PlotSpec& plot, const Axis& x, const Axis& y) {
  const double x0 = kLeft;
  const double x1 = kWidth - kRight;
  const double y0 = kHeight - kBottom;
  const double y1 = kTop;
  os << "<rect x=\"" << num(x0) << "\" y=\"" << num(y1) << "\" width=\"" << num(x1 - x0)
     << "\" height=\"" << num(y0 - y1) << "\" fill=\"none\" stroke=\"#000\"/>\n";
  for (double t : ticks(x)) {
    const double px = x.to_pixel(t);
    os << "<line x1=\"" << num(px) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(px)
       << "\" y2=\"" << num(y0 + 5) << "\" stroke=\"#000\"/>\n";
    os << "<text x=\"" << num(px) << "\" y=\"" << num(y0 + 20)
       << "\" text-anchor=\"middle\">" << num(t) << "</text>\n";
  }
  for (double t : ticks(y)) {
    const double py = y.to_pixel(t);
    os << "<line x1=\"" << num(x0 - 5) << "\" y1=\"" << num(py) << "\" x2=\"" << num(x0)
       << "\" y2=\"" << num(py) << "\" stroke=\"#000\"/>\n";
    os << "<text x=\"" << num(x0 - 8) << "\" y=\"" << num(py + 4)
       << "\" text-anchor=\"end\">" << num(t) << "</text>\n";
  }
  os << "<text x=\"" << num((x0 + x1) / 2) << "\" y=\"" << num(kHeight - 15)
     << "\" text-anchor=\"middle\">" << escape(plot.x_label) << "</text>\n";
  os << "<text x=\"20\" y=\"" << num((y0 + y1) / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
     << num((y0 + y1) / 2) << ")\">" << escape(plot.y_label) << "</text>\n";
  os << "<text x=\"" << num(kWidth / 2) << "\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">"
     << escape(plot.title) << "</text>\n";
}

// Cell edges halfway between neighbouring samples in plot coordinates.
std::vector<double> cell_edges(const std::vector<double>& samples, const Axis& axis) {
  std::vector<double> centres;
  for (double v : samples) centres.push_back(axis.to_pixel(v));
  std::vector<double> edges(centres.size() + 1);
  if (centres.size() == 1) {
    edges[0] = axis.pixel_lo;
    edges[1] = axis.pixel_hi;
    return edges;
  }
  for (std::size_t k = 1; k < centres.size(); ++k) edges[k] = (centres[k - 1] + centres[k]) / 2;
  edges.front() = centres.front() - (edges[1] - centres.front());
  edges.back() = centres.back() + (centres.back() - edges[centres.size() - 1]);
  return edges;
}

void draw_heatmap(std::ostringstream& os, const PlotSpec& plot) {
  const Axis x = make_axis(plot.x, plot.log_x, kLeft, kWidth - kRight);
  const Axis y = make_axis(plot.y, plot.log_y, kHeight - kBottom, kTop);
  double z_lo = std::numeric_limits<double>::infinity();
  double z_hi = -z_lo;
  for (double v : plot.z) {
    if (!std::isfinite(v)) continue;
    z_lo = std::min(z_lo, v);
    z_hi = std::max(z_hi, v);
  }
  if (!std::isfinite(z_lo)) z_lo = z_hi = 0.0;
  if (z_hi == z_lo) z_hi = z_lo + 1.0;
  const auto xe = cell_edges(plot.x, x);
  const auto ye = cell_edges(plot.y, y);
  os << "<g shape-rendering=\"crispEdges\">\n";
  for (std::size_t m = 0; m < plot.y.size(); ++m) {
    const double top = std::min(ye[m], ye[m + 1]);
    const double height = std::abs(ye[m + 1] - ye[m]);
    for (std::size_t k = 0; k < plot.x.size(); ++k) {
      const double left = std::min(xe[k], xe[k + 1]);
      const double width = std::abs(xe[k + 1] - xe[k]);
      const double z = plot.z[m * plot.x.size() + k];
      os << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(width)
         << "\" height=\"" << num(height) << "\" fill=\"" << colour((z - z_lo) / (z_hi - z_lo))
         << "\"/>\n";
    }
  }
  os << "</g>\n";
  draw_axes(os, plot, x, y);
  const double bar_x = kWidth - kRight + 30;
  const double bar_top = kTop;
  const double bar_height = kHeight - kTop - kBottom;
  constexpr int kBands = 64;
  for (int b = 0; b < kBands; ++b) {
    const double t = (b + 0.5) / kBands;
    os << "<rect x=\"" << num(bar_x) << "\" y=\"" << num(bar_top + bar_height * (1 - (b + 1.0) / kBands))
       << "\" width=\"20\" height=\"" << num(bar_height / kBands + 0.5) << "\" fill=\"" << colour(t)
       << "\"/>\n";
  }
  os << "<text x=\"" << num(bar_x + 26) << "\" y=\"" << num(bar_top + 10) << "\">" << num(z_hi)
     << "</text>\n";
  os << "<text x=\"" << num(bar_x + 26) << "\" y=\"" << num(bar_top + bar_height) << "\">"
     << num(z_lo) << "</text>\n";
  os << "<text x=\"" << num(bar_x) << "\" y=\"" << num(bar_top - 8) << "\">"
     << escape(plot.z_label) << "</text>\n";
}

void draw_lines(std::ostringstream& os, const PlotSpec& plot) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& s : plot.series) {
    xs.insert(xs.end(), s.x.begin(), s.x.end());
    ys.insert(ys.end(), s.y.begin(), s.y.end());
  }
  const Axis x = make_axis(xs, plot.log_x, kLeft, kWidth - kRight);
  const Axis y = make_axis(ys, plot.log_y, kHeight - kBottom, kTop);
  draw_axes(os, plot, x, y);
  for (std::size_t s = 0; s < plot.series.size(); ++s) {
    const auto& series = plot.series[s];
    const char* stroke = kPalette[s % kPalette.size()];
    os << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (std::size_t k = 0; k < series.x.size() && k < series.y.size(); ++k) {
      if (!std::isfinite(series.x[k]) || !std::isfinite(series.y[k])) continue;
      if ((plot.log_x && series.x[k] <= 0) || (plot.log_y && series.y[k] <= 0)) continue;
      if (!first) os << ' ';
      first = false;
      os << num(x.to_pixel(series.x[k])) << ',' << num(y.to_pixel(series.y[k]));
    }
    os << "\"/>\n";
    const double ly = kTop + 10 + 20.0 * static_cast<double>(s);
    const double lx = kWidth - kRight + 15;
    os << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 24)
       << "\" y2=\"" << num(ly) << "\" stroke=\"" << stroke << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << num(lx + 30) << "\" y=\"" << num(ly + 4) << "\">" << escape(series.label)
       << "</text>\n";
  }
}

}  // namespace

std::string render_svg(const PlotSpec& plot) {
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\""
     << num(kHeight) << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(kHeight)
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n";
  if (plot.kind == PlotSpec::Kind::heatmap) {
    draw_heatmap(os, plot);
  } else {
    draw_lines(os, plot);
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace spinchain::cli
