#pragma once

#include <string>

#include "ndmm/engine.hpp"
#include "ndmm/problem.hpp"

namespace ndmm {

enum class PlotMode {
  kBands,  // de-neutrosophied scores: crisp as lines, intervals as bands
  kLines,  // score as a function of I over [i_min, i_max]
};

struct PlotSpec {
  int width = 720;
  int lane_height = 48;
  int margin_left = 96;
  int margin_right = 32;
  int margin_top = 40;
  int margin_bottom = 48;
  PlotMode mode = PlotMode::kBands;
};

struct AxisRange {
  double lo = 0.0;
  double hi = 1.0;
  double step = 0.1;
};

/// Tick-aligned axis covering [lo, hi] with at least 5% of the axis span
/// free on each side.
AxisRange nice_axis(double lo, double hi);

/// Standalone SVG for an evaluated problem. Output depends only on inputs.
std::string render_svg(const DecisionProblem& problem, const EvaluationResult& result,
                       const PlotSpec& spec = {});

}  // namespace ndmm
