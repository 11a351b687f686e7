#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ftla {

struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> band;  // half-width around y; empty = no band
};

// Self-contained line chart: axes and ticks as <line>/<text>, one <polyline>
// per series, translucent <polygon> error bands, inline legend. No external
// plotting stack.
struct SvgChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<SvgSeries> series;
  int width = 860;
  int height = 520;

  void render(std::ostream& out) const;
};

}  // namespace ftla
