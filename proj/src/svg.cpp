#include "rotorbox/svg.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace rotorbox {

namespace {

constexpr double kW = 720, kH = 480;
constexpr double kML = 80, kMR = 30, kMT = 50, kMB = 60;

struct Range {
  double lo = 0.0, hi = 1.0;
  double map(double v, double a, double b) const {
    if (hi == lo) return (a + b) / 2;
    return a + (v - lo) / (hi - lo) * (b - a);
  }
};

Range span(const std::vector<PlotSeries>& series, bool ys) {
  Range r{1e300, -1e300};
  for (const auto& s : series) {
    for (double v : ys ? s.y : s.x) {
      r.lo = std::min(r.lo, v);
      r.hi = std::max(r.hi, v);
    }
  }
  if (r.lo > r.hi) return {0.0, 1.0};
  const double pad = (r.hi - r.lo) * 0.06 + 1e-12;
  return {r.lo - pad, r.hi + pad};
}

std::string fmt(double v) {
  std::ostringstream o;
  o << std::setprecision(10) << v;
  return o.str();
}

}  // namespace

std::string render_svg(const PlotSpec& spec) {
  const Range rx = span(spec.series, false);
  const Range ry = span(spec.series, true);
  const auto px = [&](double x) { return rx.map(x, kML, kW - kMR); };
  const auto py = [&](double y) { return ry.map(y, kH - kMB, kMT); };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
    << "\" viewBox=\"0 0 " << kW << ' ' << kH << "\">\n";
  s << "<desc>\nseries,x,y\n";
  for (const auto& ser : spec.series) {
    for (size_t i = 0; i < ser.x.size(); ++i) {
      s << ser.name << ',' << fmt(ser.x[i]) << ',' << fmt(ser.y[i]) << '\n';
    }
  }
  s << "</desc>\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << kW / 2 << "\" y=\"28\" text-anchor=\"middle\" font-size=\"17\" "
       "font-family=\"sans-serif\">"
    << spec.title << "</text>\n";

  // frame and ticks
  s << "<rect x=\"" << kML << "\" y=\"" << kMT << "\" width=\"" << kW - kML - kMR
    << "\" height=\"" << kH - kMT - kMB << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double fx = rx.lo + (rx.hi - rx.lo) * i / 5.0;
    const double fy = ry.lo + (ry.hi - ry.lo) * i / 5.0;
    s << "<line x1=\"" << px(fx) << "\" y1=\"" << kH - kMB << "\" x2=\"" << px(fx) << "\" y2=\""
      << kH - kMB + 5 << "\" stroke=\"#444\"/>\n";
    s << "<text x=\"" << px(fx) << "\" y=\"" << kH - kMB + 20
      << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">"
      << std::setprecision(4) << fx << "</text>\n";
    s << "<line x1=\"" << kML - 5 << "\" y1=\"" << py(fy) << "\" x2=\"" << kML << "\" y2=\""
      << py(fy) << "\" stroke=\"#444\"/>\n";
    s << "<text x=\"" << kML - 8 << "\" y=\"" << py(fy) + 4
      << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">"
      << std::setprecision(4) << fy << "</text>\n";
  }
  s << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 15
    << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\">" << spec.x_label
    << "</text>\n";
  s << "<text x=\"20\" y=\"" << kH / 2
    << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\" transform=\"rotate(-90 "
       "20 "
    << kH / 2 << ")\">" << spec.y_label << "</text>\n";

  double legend_y = kMT + 16;
  for (const auto& ser : spec.series) {
    if (ser.markers) {
      for (size_t i = 0; i < ser.x.size(); ++i) {
        s << "<circle cx=\"" << px(ser.x[i]) << "\" cy=\"" << py(ser.y[i])
          << "\" r=\"3.2\" fill=\"" << ser.color << "\"/>\n";
      }
    } else {
      s << "<polyline fill=\"none\" stroke=\"" << ser.color << "\" stroke-width=\"1.6\" points=\"";
      for (size_t i = 0; i < ser.x.size(); ++i) {
        s << px(ser.x[i]) << ',' << py(ser.y[i]) << ' ';
      }
      s << "\"/>\n";
    }
    s << "<text x=\"" << kW - kMR - 10 << "\" y=\"" << legend_y
      << "\" text-anchor=\"end\" font-size=\"12\" font-family=\"sans-serif\" fill=\"" << ser.color
      << "\">" << ser.name << "</text>\n";
    legend_y += 16;
  }
  s << "</svg>\n";
  return s.str();
}

void write_svg(const std::string& path, const PlotSpec& spec) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write svg: " + path);
  out << render_svg(spec);
}

}  // namespace rotorbox
