#pragma once

#include <optional>
#include <string>
#include <utility>

#include "ivt/core.hpp"

namespace ivt {

struct PlotStyle {
  int width = 480;
  int height = 360;
  double margin = 40.0;
  int curve_samples = 512;
  std::string curve_stroke = "#000000";
  double curve_stroke_width = 1.2;
  double dot_radius = 3.0;
  double square_half_size = 4.5;
  std::string epsilon_dash = "1,3";
};

struct PlotSpec {
  FunctionExpr function;
  AnyTrace trace;
  std::pair<double, double> x_range{-1.0, 1.0};
  std::pair<double, double> y_range{-1.0, 1.0};
  // Defaults to the trace's epsilon.
  std::optional<double> epsilon_line;
  PlotStyle style;
};

// Affine map between data coordinates and SVG user units.
struct PlotFrame {
  double left = 0;
  double top = 0;
  double plot_width = 0;
  double plot_height = 0;
  std::pair<double, double> x_range;
  std::pair<double, double> y_range;

  static PlotFrame of(const PlotSpec& spec);

  double to_px(double x) const;
  double to_py(double y) const;
  double from_px(double px) const;
  double from_py(double py) const;
};

// Standalone SVG 1.1: the sampled curve, a filled circle per (c_n, f(c_n)),
// an open square at the last midpoint, a dotted line at y = epsilon and axes
// with ticks at -1 and 1. Output depends only on the spec. Throws PlotError
// for degenerate ranges or an empty trace.
std::string render_trace_svg(const PlotSpec& spec);

}  // namespace ivt
