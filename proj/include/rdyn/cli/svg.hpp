#pragma once

#include <string>
#include <vector>

#include "rdyn/core.hpp"

namespace rdyn::cli {

struct SvgSeries {
  std::string label;
  std::vector<Complex> points;
};

/// Data window of the plot. Each axis spans its 1st-99th percentile of the
/// plotted points plus 5% padding, so a few escaping samples do not flatten
/// the attractor.
struct SvgView {
  double x_min = -1.0;
  double x_max = 1.0;
  double y_min = -1.0;
  double y_max = 1.0;
};

inline constexpr int kSvgSize = 800;
inline constexpr int kSvgMargin = 60;
inline constexpr double kSvgLowPercentile = 1.0;
inline constexpr double kSvgHighPercentile = 99.0;

SvgView percentile_view(const std::vector<SvgSeries>& series);

/// Self-contained SVG 1.1 scatter in the complex plane (x = Re, y = Im), one
/// point cloud per series. Output bytes depend only on the input.
std::string render_scatter_svg(const std::vector<SvgSeries>& series, const std::string& title);

struct ParsedSvg {
  SvgView view;
  std::vector<std::vector<Complex>> series;
};

/// Reads back a document produced by render_scatter_svg, mapping pixel
/// coordinates to data coordinates.
ParsedSvg parse_scatter_svg(const std::string& svg);

}  // namespace rdyn::cli
