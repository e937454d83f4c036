#ifndef CRACKDIFF_SVG_PLOT_HPP
#define CRACKDIFF_SVG_PLOT_HPP

#include <string>
#include <vector>

namespace crackdiff::svg {

struct Series {
  std::string label;
  std::vector<double> x, y;
};

struct PlotSpec {
  std::string title, xlabel, ylabel;
  std::vector<Series> series;
  int width = 720, height = 480;
};

// Standalone SVG line plot: axes, tick labels, one polyline per series and a
// legend. Throws MissingArtifact when no series has data.
void write_line_svg(const std::string& path, const PlotSpec& spec);

}  // namespace crackdiff::svg

#endif
