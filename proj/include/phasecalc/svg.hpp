#ifndef PHASECALC_SVG_HPP
#define PHASECALC_SVG_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "phasecalc/grid.hpp"

namespace phasecalc {

struct HeatmapAxes {
  std::string title;
  std::string x_label = "x";
  std::string y_label = "xi";
  double x0 = 0.0, dx = 1.0;  // coordinate of column 0 and column step
  double y0 = 0.0, dy = 1.0;  // coordinate of row 0 and row step
};

/// Axes for data sampled on the phase grid: columns are x, rows are xi.
HeatmapAxes phase_axes(const Grid1D& g, std::string title);

/// Palette index (0..255) of every cell after linear scaling to [min, max].
/// Constant data maps to index 0. Non-finite values throw.
std::vector<unsigned char> palette_indices(const RealMatrix& data);

/// PNG bytes of the palette image, one pixel per cell, row 0 at the bottom.
std::vector<unsigned char> heatmap_png(const RealMatrix& data);

/// SVG document with the PNG embedded as base64 and tick labels in grid
/// coordinates. Output bytes depend only on data and axes.
std::string heatmap_svg(const RealMatrix& data, const HeatmapAxes& axes);

/// Same, for flat data with an explicit shape; shape must have two entries.
std::string heatmap_svg(const std::vector<double>& flat, const std::vector<int>& shape, const HeatmapAxes& axes);

struct Bar {
  std::string label;
  double value;
};

/// Vertical bar chart with a dashed reference line at `reference`.
std::string bar_chart_svg(const std::vector<Bar>& bars, const std::string& title, double reference);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace phasecalc

#endif  // PHASECALC_SVG_HPP
