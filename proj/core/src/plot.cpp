#include "ndmm/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "ndmm/io.hpp"

namespace ndmm {

namespace {

constexpr const char* kCrispColor = "#1f4e79";
constexpr const char* kBandColor = "#9dc3e6";
constexpr const char* kSelectedColor = "#c55a11";
constexpr const char* kSelectedBand = "#f4b183";

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string interval_text(const Interval& iv) {
  if (iv.is_point()) return format_number(iv.lo);
  return "[" + format_number(iv.lo) + "," + format_number(iv.hi) + "]";
}

double nice_step(double raw) {
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double f = raw / mag;
  if (f <= 1.0) return mag;
  if (f <= 2.0) return 2.0 * mag;
  if (f <= 5.0) return 5.0 * mag;
  return 10.0 * mag;
}

// Tick values from lo to hi; computed by index to avoid drift.
std::vector<double> ticks(const AxisRange& axis) {
  std::vector<double> out;
  const auto n = static_cast<long>(std::llround((axis.hi - axis.lo) / axis.step));
  for (long i = 0; i <= n; ++i) out.push_back(axis.lo + static_cast<double>(i) * axis.step);
  return out;
}

class Svg {
 public:
  Svg(int width, int height) {
    out_ += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) + "\" height=\"" +
            std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) + " " + std::to_string(height) +
            "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  }

  void path(const std::string& d, const char* stroke, const char* cls) {
    out_ += "  <path class=\"" + std::string(cls) + "\" d=\"" + d + "\" stroke=\"" + stroke +
            "\" stroke-width=\"1\" fill=\"none\"/>\n";
  }

  void text(double x, double y, const std::string& s, const char* anchor, const char* cls) {
    out_ += "  <text class=\"" + std::string(cls) + "\" x=\"" + px(x) + "\" y=\"" + px(y) + "\" text-anchor=\"" +
            anchor + "\">" + escape(s) + "</text>\n";
  }

  void raw(const std::string& s) { out_ += s; }

  std::string finish() {
    out_ += "</svg>\n";
    return std::move(out_);
  }

 private:
  std::string out_;
};

struct Mapper {
  AxisRange axis;
  double from;
  double to;
  double operator()(double v) const { return from + (v - axis.lo) / (axis.hi - axis.lo) * (to - from); }
};

std::string render_bands(const DecisionProblem& problem, const EvaluationResult& result, const PlotSpec& spec) {
  const std::size_t m = result.intervals.size();
  const int height = spec.margin_top + static_cast<int>(m) * spec.lane_height + spec.margin_bottom;
  const double plot_bottom = spec.margin_top + static_cast<double>(m) * spec.lane_height;

  double lo = result.intervals.front().lo;
  double hi = result.intervals.front().hi;
  for (const auto& iv : result.intervals) {
    lo = std::min(lo, iv.lo);
    hi = std::max(hi, iv.hi);
  }
  const AxisRange axis = nice_axis(lo, hi);
  const Mapper x{axis, static_cast<double>(spec.margin_left), static_cast<double>(spec.width - spec.margin_right)};

  Svg svg(spec.width, height);
  svg.text(spec.width / 2.0, spec.margin_top / 2.0, "De-neutrosophied scores (I in [" +
           format_number(result.config.i_min) + ", " + format_number(result.config.i_max) + "])",
           "middle", "title");

  std::string grid;
  std::string axis_path = "M" + px(x(axis.lo)) + " " + px(plot_bottom) + " H" + px(x(axis.hi));
  for (double t : ticks(axis)) {
    grid += "M" + px(x(t)) + " " + px(spec.margin_top) + " V" + px(plot_bottom) + " ";
    axis_path += " M" + px(x(t)) + " " + px(plot_bottom) + " v5";
    svg.text(x(t), plot_bottom + 18, format_number(t), "middle", "tick");
  }
  if (!grid.empty()) grid.pop_back();
  svg.path(grid, "#e0e0e0", "grid");
  svg.path(axis_path, "#333333", "axis");
  svg.text(x(axis.lo) + (x(axis.hi) - x(axis.lo)) / 2.0, plot_bottom + 38, "score", "middle", "axis-label");

  for (std::size_t j = 0; j < m; ++j) {
    const Interval& iv = result.intervals[j];
    const bool selected = j == result.selected_index;
    const double yc = spec.margin_top + (static_cast<double>(j) + 0.5) * spec.lane_height;
    const double half = spec.lane_height * 0.3;
    const std::string& id = problem.alternatives[j].id;
    const std::string common = " data-id=\"" + escape(id) + "\" data-lo=\"" + format_number(iv.lo) +
                               "\" data-hi=\"" + format_number(iv.hi) + "\"" +
                               (selected ? " data-selected=\"true\"" : "");

    svg.text(spec.margin_left - 10.0, yc + 4, id, "end", "lane-label");
    if (iv.is_point()) {
      svg.raw("  <line class=\"crisp\"" + common + " x1=\"" + px(x(iv.lo)) + "\" y1=\"" + px(yc - half) +
              "\" x2=\"" + px(x(iv.lo)) + "\" y2=\"" + px(yc + half) + "\" stroke=\"" +
              (selected ? kSelectedColor : kCrispColor) + "\" stroke-width=\"3\"/>\n");
    } else {
      svg.raw("  <rect class=\"band\"" + common + " x=\"" + px(x(iv.lo)) + "\" y=\"" + px(yc - half) +
              "\" width=\"" + px(x(iv.hi) - x(iv.lo)) + "\" height=\"" + px(2 * half) + "\" fill=\"" +
              (selected ? kSelectedBand : kBandColor) + "\" stroke=\"" +
              (selected ? kSelectedColor : kCrispColor) + "\" stroke-width=\"1\"/>\n");
    }
    svg.text(x(iv.hi) + 6, yc + 4, interval_text(iv), "start", "interval-label");
  }
  return svg.finish();
}

std::string render_lines(const DecisionProblem& problem, const EvaluationResult& result, const PlotSpec& spec) {
  const double i_min = result.config.i_min;
  const double i_max = result.config.i_max;
  const std::size_t m = result.neutro_scores.size();
  const int plot_height = std::max(240, static_cast<int>(m) * spec.lane_height / 2);
  const int height = spec.margin_top + plot_height + spec.margin_bottom;
  const double plot_bottom = spec.margin_top + static_cast<double>(plot_height);

  double lo = result.intervals.front().lo;
  double hi = result.intervals.front().hi;
  for (const auto& iv : result.intervals) {
    lo = std::min(lo, iv.lo);
    hi = std::max(hi, iv.hi);
  }
  const AxisRange y_axis = nice_axis(lo, hi);
  const AxisRange i_axis = i_min < i_max ? AxisRange{i_min, i_max, nice_step((i_max - i_min) / 4.0)}
                                         : AxisRange{i_min - 0.5, i_min + 0.5, 0.25};
  const Mapper x{i_axis, static_cast<double>(spec.margin_left), static_cast<double>(spec.width - spec.margin_right)};
  const Mapper y{y_axis, plot_bottom, static_cast<double>(spec.margin_top)};

  Svg svg(spec.width, height);
  svg.text(spec.width / 2.0, spec.margin_top / 2.0, "Neutrosophic scores as functions of I", "middle", "title");

  std::string axis_path = "M" + px(x(i_axis.lo)) + " " + px(plot_bottom) + " H" + px(x(i_axis.hi)) + " M" +
                          px(x(i_axis.lo)) + " " + px(plot_bottom) + " V" + px(spec.margin_top);
  std::string grid;
  for (double t : ticks(y_axis)) {
    grid += "M" + px(x(i_axis.lo)) + " " + px(y(t)) + " H" + px(x(i_axis.hi)) + " ";
    axis_path += " M" + px(x(i_axis.lo)) + " " + px(y(t)) + " h-5";
    svg.text(x(i_axis.lo) - 8, y(t) + 4, format_number(t), "end", "tick");
  }
  if (!grid.empty()) grid.pop_back();
  std::vector<double> i_ticks;
  if (i_min < i_max) {
    const double step = i_axis.step;
    for (double t = std::ceil(i_min / step) * step; t <= i_max + step * 1e-9; t += step) i_ticks.push_back(t);
  } else {
    i_ticks.push_back(i_min);
  }
  for (double t : i_ticks) {
    axis_path += " M" + px(x(t)) + " " + px(plot_bottom) + " v5";
    svg.text(x(t), plot_bottom + 18, format_number(std::abs(t) < 1e-12 ? 0.0 : t), "middle", "tick");
  }
  svg.path(grid, "#e0e0e0", "grid");
  svg.path(axis_path, "#333333", "axis");
  svg.text(x(i_axis.lo) + (x(i_axis.hi) - x(i_axis.lo)) / 2.0, plot_bottom + 38, "I", "middle", "axis-label");

  for (std::size_t j = 0; j < m; ++j) {
    const NeutroValue& s = result.neutro_scores[j];
    const bool selected = j == result.selected_index;
    const double a = i_min < i_max ? i_min : i_axis.lo;
    const double b = i_min < i_max ? i_max : i_axis.hi;
    const double ya = y(nv_eval(s, i_min));
    const double yb = y(nv_eval(s, i_max));
    const std::string& id = problem.alternatives[j].id;
    svg.raw("  <line class=\"score-line\" data-id=\"" + escape(id) + "\" data-score=\"" + format_rating(s) + "\"" +
            (selected ? " data-selected=\"true\"" : "") + " x1=\"" + px(x(a)) + "\" y1=\"" + px(ya) +
            "\" x2=\"" + px(x(b)) + "\" y2=\"" + px(yb) + "\" stroke=\"" +
            (selected ? kSelectedColor : kCrispColor) + "\" stroke-width=\"2\"/>\n");
    svg.text(x(b) + 6, yb + 4, id + " = " + format_rating(s), "start", "line-label");
  }
  return svg.finish();
}

}  // namespace

AxisRange nice_axis(double lo, double hi) {
  double span = hi - lo;
  if (!(span > 0.0)) span = std::max(1.0, std::abs(lo) * 0.1);
  double pad = 0.1 * span;
  for (;;) {
    const double step = nice_step((span + 2 * pad) / 8.0);
    AxisRange axis{std::floor((lo - pad) / step) * step, std::ceil((hi + pad) / step) * step, step};
    const double margin = 0.05 * (axis.hi - axis.lo);
    if (lo - axis.lo >= margin && axis.hi - hi >= margin) return axis;
    pad *= 1.5;
  }
}

std::string render_svg(const DecisionProblem& problem, const EvaluationResult& result, const PlotSpec& spec) {
  if (result.intervals.empty()) throw Error("nothing to plot");
  return spec.mode == PlotMode::kBands ? render_bands(problem, result, spec) : render_lines(problem, result, spec);
}

}  // namespace ndmm
