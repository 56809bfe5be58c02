#pragma once

#include <string>
#include <vector>

namespace lapreg {

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
};

/// Self-contained SVG line plot: axes with ticks, one polyline per series,
/// legend. No external tooling; output is deterministic and diffable.
void write_svg_plot(const std::string& path, const PlotSpec& spec);

}  // namespace lapreg
