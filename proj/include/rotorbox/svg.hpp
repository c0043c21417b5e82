#pragma once

#include <string>
#include <vector>

#include "rotorbox/types.hpp"

namespace rotorbox {

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f6fb3";
  bool markers = false;  // draw points instead of a line
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
};

// Static SVG line/scatter plot with the plotted numbers embedded as a CSV
// table inside a <desc> element, so the document is self-auditing.
std::string render_svg(const PlotSpec& spec);
void write_svg(const std::string& path, const PlotSpec& spec);

}  // namespace rotorbox
