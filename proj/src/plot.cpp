// Copyright 2026 The hmaser Authors
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

#include "hmaser/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "hmaser/errors.hpp"

namespace hmaser {

namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 80, kRight = 30, kTop = 40, kBottom = 60;
constexpr const char* kPalette[] = {"#1f4e9c", "#c0392b", "#27803b", "#8e44ad", "#d68910", "#17a5a5", "#555555"};

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

std::string num(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << v;
  return os.str();
}

std::string tick_label(double v) {
  if (std::abs(v) < 1e-12) return "0";
  std::ostringstream os;
  os << std::setprecision(4) << v;
  return os.str();
}

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

Range finite_range(const std::vector<const std::vector<double>*>& data, bool positive_only) {
  Range r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto* v : data) {
    for (double x : *v) {
      if (!std::isfinite(x) || (positive_only && x <= 0.0)) continue;
      r.lo = std::min(r.lo, x);
      r.hi = std::max(r.hi, x);
    }
  }
  if (!std::isfinite(r.lo)) return {0.0, 1.0};
  if (r.hi - r.lo < 1e-12 * std::max(1.0, std::abs(r.hi))) {
    const double pad = std::max(1e-3, 0.05 * std::abs(r.hi));
    return {r.lo - pad, r.hi + pad};
  }
  return r;
}

std::vector<double> nice_ticks(Range r, int target = 6) {
  const double span = r.hi - r.lo;
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  }
  std::vector<double> ticks;
  for (double t = std::ceil(r.lo / step) * step; t <= r.hi + 1e-9 * step; t += step) {
    ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  }
  return ticks;
}

class Frame {
 public:
  Frame(Range x, Range y, bool log_y) : x_(x), y_(y), log_y_(log_y) {
    if (log_y_) y_ = {std::log10(y.lo), std::log10(y.hi)};
  }
  double px(double x) const { return kLeft + (x - x_.lo) / (x_.hi - x_.lo) * (kWidth - kLeft - kRight); }
  double py(double y) const {
    const double v = log_y_ ? std::log10(y) : y;
    return kHeight - kBottom - (v - y_.lo) / (y_.hi - y_.lo) * (kHeight - kTop - kBottom);
  }
  Range x() const { return x_; }
  Range y_display() const { return y_; }
  bool log_y() const { return log_y_; }

 private:
  Range x_, y_;
  bool log_y_;
};

void header(std::ostringstream& os, const std::string& title) {
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
     << "</text>\n";
}

void axes(std::ostringstream& os, const Frame& f, const std::string& xlabel, const std::string& ylabel) {
  const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
  os << "<rect x=\"" << x0 << "\" y=\"" << y1 << "\" width=\"" << x1 - x0 << "\" height=\"" << y0 - y1
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double t : nice_ticks(f.x())) {
    const double p = f.px(t);
    os << "<line x1=\"" << num(p) << "\" y1=\"" << y0 << "\" x2=\"" << num(p) << "\" y2=\"" << y0 + 5
       << "\" stroke=\"black\"/>\n<text x=\"" << num(p) << "\" y=\"" << y0 + 18 << "\" text-anchor=\"middle\">"
       << tick_label(t) << "</text>\n";
  }
  const Range yd = f.y_display();
  for (double t : nice_ticks(yd)) {
    const double v = f.log_y() ? std::pow(10.0, t) : t;
    const double p = f.py(v);
    os << "<line x1=\"" << x0 - 5 << "\" y1=\"" << num(p) << "\" x2=\"" << x0 << "\" y2=\"" << num(p)
       << "\" stroke=\"black\"/>\n<text x=\"" << x0 - 8 << "\" y=\"" << num(p + 4) << "\" text-anchor=\"end\">"
       << (f.log_y() ? "1e" + tick_label(t) : tick_label(t)) << "</text>\n";
  }
  os << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << kHeight - 18 << "\" text-anchor=\"middle\">" << escape(xlabel)
     << "</text>\n<text transform=\"translate(18," << (y0 + y1) / 2
     << ") rotate(-90)\" text-anchor=\"middle\">" << escape(ylabel) << "</text>\n";
}

void save(const std::string& text, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot write " + path.string());
  out << text;
}

// Piecewise-linear blue-white-red map on [0, 1].
std::string colour(double t) {
  t = std::clamp(t, 0.0, 1.0);
  double r, g, b;
  if (t < 0.5) {
    const double s = t / 0.5;
    r = 0.23 + s * 0.77;
    g = 0.30 + s * 0.70;
    b = 0.75 + s * 0.25;
  } else {
    const double s = (t - 0.5) / 0.5;
    r = 1.0 - s * 0.29;
    g = 1.0 - s * 0.98;
    b = 1.0 - s * 0.85;
  }
  std::ostringstream os;
  os << "rgb(" << static_cast<int>(r * 255) << ',' << static_cast<int>(g * 255) << ',' << static_cast<int>(b * 255)
     << ')';
  return os.str();
}

}  // namespace

std::string render_svg(const LinePlot& plot) {
  std::vector<const std::vector<double>*> xs, ys;
  for (const auto& s : plot.series) {
    xs.push_back(&s.x);
    ys.push_back(&s.y);
  }
  ys.push_back(&plot.hlines);
  Range xr = finite_range(xs, false);
  Range yr = finite_range(ys, plot.log_y);
  if (!plot.log_y) {
    const double pad = 0.05 * (yr.hi - yr.lo);
    yr = {yr.lo - pad, yr.hi + pad};
  }
  const Frame f(xr, yr, plot.log_y);
  std::ostringstream os;
  header(os, plot.title);
  axes(os, f, plot.xlabel, plot.ylabel);

  for (double v : plot.vlines) {
    if (v < xr.lo || v > xr.hi) continue;
    os << "<line x1=\"" << num(f.px(v)) << "\" y1=\"" << kTop << "\" x2=\"" << num(f.px(v)) << "\" y2=\""
       << kHeight - kBottom << "\" stroke=\"#888888\" stroke-dasharray=\"2,3\"/>\n";
  }
  for (double v : plot.hlines) {
    if (!std::isfinite(v) || (plot.log_y && v <= 0.0)) continue;
    os << "<line x1=\"" << kLeft << "\" y1=\"" << num(f.py(v)) << "\" x2=\"" << kWidth - kRight << "\" y2=\""
       << num(f.py(v)) << "\" stroke=\"#888888\" stroke-dasharray=\"6,4\"/>\n";
  }

  os << "<clipPath id=\"plot\"><rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kWidth - kLeft - kRight
     << "\" height=\"" << kHeight - kTop - kBottom << "\"/></clipPath>\n<g clip-path=\"url(#plot)\">\n";
  for (std::size_t k = 0; k < plot.series.size(); ++k) {
    const LineSeries& s = plot.series[k];
    const std::string col = kPalette[k % std::size(kPalette)];
    std::ostringstream d;
    bool pen_down = false;
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      const bool ok = std::isfinite(s.x[i]) && std::isfinite(s.y[i]) && (!plot.log_y || s.y[i] > 0.0);
      if (!ok) {
        pen_down = false;
        continue;
      }
      d << (pen_down ? " L" : " M") << num(f.px(s.x[i])) << ' ' << num(f.py(s.y[i]));
      pen_down = true;
      if (s.markers) {
        os << "<circle cx=\"" << num(f.px(s.x[i])) << "\" cy=\"" << num(f.py(s.y[i])) << "\" r=\"2.5\" fill=\"" << col
           << "\"/>\n";
      }
    }
    if (!s.markers || s.x.size() > 1) {
      os << "<path d=\"" << d.str() << "\" fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\""
         << (s.dashed ? " stroke-dasharray=\"5,3\"" : "") << "/>\n";
    }
  }
  os << "</g>\n";

  double ly = kTop + 16;
  for (std::size_t k = 0; k < plot.series.size(); ++k) {
    const std::string col = kPalette[k % std::size(kPalette)];
    const double lx = kWidth - kRight - 170;
    os << "<line x1=\"" << lx << "\" y1=\"" << ly - 4 << "\" x2=\"" << lx + 24 << "\" y2=\"" << ly - 4 << "\" stroke=\""
       << col << "\" stroke-width=\"1.5\"" << (plot.series[k].dashed ? " stroke-dasharray=\"5,3\"" : "")
       << "/>\n<text x=\"" << lx + 30 << "\" y=\"" << ly << "\">" << escape(plot.series[k].label) << "</text>\n";
    ly += 16;
  }
  os << "</svg>\n";
  return os.str();
}

std::string render_svg(const HeatmapPlot& plot) {
  const auto nx = static_cast<Eigen::Index>(plot.x.size());
  const auto ny = static_cast<Eigen::Index>(plot.y.size());
  if (plot.z.rows() != ny || plot.z.cols() != nx || nx == 0 || ny == 0) {
    fail(ErrorCode::InvalidDimension, "heatmap grid does not match its axes");
  }
  auto edges = [](const std::vector<double>& c) {
    std::vector<double> e(c.size() + 1);
    if (c.size() == 1) return std::vector<double>{c[0] - 0.5, c[0] + 0.5};
    for (std::size_t i = 1; i < c.size(); ++i) e[i] = 0.5 * (c[i - 1] + c[i]);
    e.front() = c.front() - (e[1] - c.front());
    e.back() = c.back() + (c.back() - e[c.size() - 1]);
    return e;
  };
  const auto ex = edges(plot.x);
  const auto ey = edges(plot.y);
  double zlo = std::numeric_limits<double>::infinity(), zhi = -zlo;
  for (Eigen::Index j = 0; j < ny; ++j) {
    for (Eigen::Index i = 0; i < nx; ++i) {
      const double v = plot.z(j, i);
      if (!std::isfinite(v)) continue;
      zlo = std::min(zlo, v);
      zhi = std::max(zhi, v);
    }
  }
  if (!std::isfinite(zlo)) zlo = 0.0, zhi = 1.0;
  if (zhi - zlo < 1e-300) zhi = zlo + 1.0;

  const Frame f({ex.front(), ex.back()}, {ey.front(), ey.back()}, false);
  std::ostringstream os;
  header(os, plot.title);
  for (Eigen::Index j = 0; j < ny; ++j) {
    for (Eigen::Index i = 0; i < nx; ++i) {
      const double v = plot.z(j, i);
      if (!std::isfinite(v)) continue;
      const double x0 = f.px(ex[i]), x1 = f.px(ex[i + 1]);
      const double y0 = f.py(ey[j + 1]), y1 = f.py(ey[j]);
      os << "<rect x=\"" << num(x0) << "\" y=\"" << num(y0) << "\" width=\"" << num(x1 - x0 + 0.3) << "\" height=\""
         << num(y1 - y0 + 0.3) << "\" fill=\"" << colour((v - zlo) / (zhi - zlo)) << "\"/>\n";
    }
  }
  axes(os, f, plot.xlabel, plot.ylabel);

  // Colour bar in the right margin of the title row.
  const double bx = kWidth - kRight - 200, by = 28;
  for (int k = 0; k < 50; ++k) {
    os << "<rect x=\"" << num(bx + 3 * k) << "\" y=\"" << by << "\" width=\"3.2\" height=\"8\" fill=\""
       << colour(k / 49.0) << "\"/>\n";
  }
  os << "<text x=\"" << bx - 4 << "\" y=\"" << by + 8 << "\" text-anchor=\"end\" font-size=\"10\">"
     << tick_label(zlo) << "</text>\n<text x=\"" << bx + 154 << "\" y=\"" << by + 8 << "\" font-size=\"10\">"
     << tick_label(zhi) << ' ' << escape(plot.zlabel) << "</text>\n</svg>\n";
  return os.str();
}

void write_svg(const LinePlot& plot, const std::filesystem::path& path) { save(render_svg(plot), path); }
void write_svg(const HeatmapPlot& plot, const std::filesystem::path& path) { save(render_svg(plot), path); }

}  // namespace hmaser
