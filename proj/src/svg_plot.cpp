#include "crackdiff/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "crackdiff/errors.hpp"
#include "crackdiff/io.hpp"

namespace crackdiff::svg {

namespace {

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// largest 1/2/5 x 10^k step giving at least 4 intervals
double nice_step(double range) {
  const double raw = range / 4.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {5.0, 2.0, 1.0})
    if (m * mag <= raw) return m * mag;
  return mag;
}

struct Axis {
  double lo, hi;
  double tick0, step;
};

Axis make_axis(double lo, double hi) {
  if (!(hi > lo)) {
    const double pad = std::max(1.0, std::abs(lo)) * 0.1;
    lo -= pad;
    hi += pad;
  }
  const double span = hi - lo;
  lo -= 0.02 * span;
  hi += 0.02 * span;
  Axis ax;
  ax.lo = lo;
  ax.hi = hi;
  ax.step = nice_step(hi - lo);
  ax.tick0 = std::ceil(lo / ax.step) * ax.step;
  return ax;
}

}  // namespace

void write_line_svg(const std::string& path, const PlotSpec& spec) {
  double xlo = 0.0, xhi = 0.0, ylo = 0.0, yhi = 0.0;
  bool any = false;
  for (const auto& s : spec.series)
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if (!any) {
        xlo = xhi = s.x[i];
        ylo = yhi = s.y[i];
        any = true;
      } else {
        xlo = std::min(xlo, s.x[i]);
        xhi = std::max(xhi, s.x[i]);
        ylo = std::min(ylo, s.y[i]);
        yhi = std::max(yhi, s.y[i]);
      }
    }
  if (!any) fail(ErrorCode::MissingArtifact, "no data to plot for " + path);

  const double ml = 70, mr = 20, mt = 40, mb = 55;
  const double W = spec.width, H = spec.height;
  const Axis ax = make_axis(xlo, xhi), ay = make_axis(ylo, yhi);
  const auto px = [&](double x) { return ml + (x - ax.lo) / (ax.hi - ax.lo) * (W - ml - mr); };
  const auto py = [&](double y) { return H - mb - (y - ay.lo) / (ay.hi - ay.lo) * (H - mt - mb); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\""
      << " font-size=\"15\">" << spec.title << "</text>\n";

  for (double t = ax.tick0; t <= ax.hi + 1e-12 * ax.step; t += ax.step) {
    out << "<line x1=\"" << num(px(t)) << "\" y1=\"" << mt << "\" x2=\"" << num(px(t))
        << "\" y2=\"" << H - mb << "\" stroke=\"#dddddd\"/>\n"
        << "<text x=\"" << num(px(t)) << "\" y=\"" << H - mb + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << num(t)
        << "</text>\n";
  }
  for (double t = ay.tick0; t <= ay.hi + 1e-12 * ay.step; t += ay.step) {
    out << "<line x1=\"" << ml << "\" y1=\"" << num(py(t)) << "\" x2=\"" << W - mr << "\" y2=\""
        << num(py(t)) << "\" stroke=\"#dddddd\"/>\n"
        << "<text x=\"" << ml - 8 << "\" y=\"" << num(py(t) + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << num(t)
        << "</text>\n";
  }
  out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr << "\" height=\""
      << H - mt - mb << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (std::size_t s = 0; s < spec.series.size(); ++s) {
    const auto& sr = spec.series[s];
    out << "<polyline fill=\"none\" stroke=\"" << kColors[s % 6] << "\" stroke-width=\"1.5\""
        << " points=\"";
    for (std::size_t i = 0; i < sr.x.size() && i < sr.y.size(); ++i) {
      if (!std::isfinite(sr.x[i]) || !std::isfinite(sr.y[i])) continue;
      out << num(px(sr.x[i])) << "," << num(py(sr.y[i])) << " ";
    }
    out << "\"/>\n";
    const double ly = mt + 16 + 16 * s;
    out << "<line x1=\"" << W - mr - 150 << "\" y1=\"" << ly - 4 << "\" x2=\"" << W - mr - 126
        << "\" y2=\"" << ly - 4 << "\" stroke=\"" << kColors[s % 6] << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << W - mr - 120 << "\" y=\"" << ly
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << sr.label << "</text>\n";
  }

  out << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << spec.xlabel
      << "</text>\n"
      << "<text x=\"18\" y=\"" << (mt + H - mb) / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\""
      << " transform=\"rotate(-90 18 " << (mt + H - mb) / 2 << ")\">" << spec.ylabel
      << "</text>\n</svg>\n";

  io::write_text(path, out.str());
}

}  // namespace crackdiff::svg
