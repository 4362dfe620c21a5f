#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "ndmm/neutro.hpp"
#include "ndmm/problem.hpp"

namespace ndmm {

/// Absolute tolerance for midpoint ties and for the crisp-vs-interval threshold.
inline constexpr double kTieTolerance = 1e-9;

struct EvaluationConfig {
  double i_min = 0.0;
  double i_max = 1.0;
  double k = 0.0;

  friend bool operator==(const EvaluationConfig&, const EvaluationConfig&) = default;
};

/// Throws ConfigError if i_min > i_max, k < 0 or any field is non-finite.
void check_config(const EvaluationConfig& cfg);

/// A point score lying strictly inside another alternative's interval.
struct Contention {
  std::size_t crisp_index = 0;
  std::size_t interval_index = 0;
  double threshold = 0.0;    // midpoint(interval) + k; the crisp score must reach it
  double k_critical = 0.0;   // crisp - midpoint; largest k at which the crisp score still wins
  double k_admissible = 0.0; // interval.hi - crisp; upper end of the admissible k range

  friend bool operator==(const Contention&, const Contention&) = default;
};

struct Selection {
  std::size_t selected_index = 0;
  std::vector<std::size_t> ranking;  // best first
  std::vector<Contention> contentions;
};

struct EvaluationResult {
  EvaluationConfig config;
  std::vector<NeutroValue> neutro_scores;
  std::vector<Interval> intervals;
  std::size_t selected_index = 0;
  std::vector<std::size_t> ranking;
  std::vector<Contention> contentions;
  std::vector<std::string> warnings;
};

/// Weighted column sums S = W x D, summed in criterion order.
/// Throws InvalidProblemError if validate_problem reports anything.
std::vector<NeutroValue> score_neutro(const DecisionProblem& problem);

/// Classical Pugh scores. Every rating must be crisp; otherwise throws
/// InvalidProblemError with kIndeterminateRating diagnostics.
std::vector<double> score_classical(const DecisionProblem& problem);

std::vector<Interval> deneutrosophy(std::span<const NeutroValue> scores, const EvaluationConfig& cfg);

/// Ranks alternatives by their de-neutrosophied scores.
///
/// Pairwise preference: a point score strictly inside another interval wins
/// against it iff score >= midpoint + k; every other pair is ordered by
/// midpoint (desc), then hi (desc), then width (asc), then index (asc).
/// The ranking repeatedly takes the remaining alternative preferred over the
/// most other remaining ones, so it is exactly the pairwise order whenever
/// that order is transitive. Throws Error on empty input, ConfigError on k < 0.
Selection select(std::span<const Interval> intervals, double k);

/// True iff alternative a is preferred over alternative b at risk parameter k.
bool prefers(const Interval& a, std::size_t a_index, const Interval& b, std::size_t b_index, double k);

EvaluationResult evaluate(const DecisionProblem& problem, const EvaluationConfig& cfg);

/// One piece of the piecewise-constant map k -> selected alternative.
/// The piece covers k from `from` (inclusive iff from_inclusive) to `to`
/// (inclusive; infinity when unbounded).
struct KSegment {
  double from = 0.0;
  bool from_inclusive = true;
  double to = std::numeric_limits<double>::infinity();
  std::size_t selected_index = 0;

  bool is_point() const noexcept { return from_inclusive && from == to; }
  bool unbounded() const noexcept { return to == std::numeric_limits<double>::infinity(); }

  friend bool operator==(const KSegment&, const KSegment&) = default;
};

/// Exact winner map over k in [0, inf), built from contention breakpoints.
std::vector<KSegment> k_sensitivity(const DecisionProblem& problem, double i_min, double i_max);

/// The k values at which the selected alternative changes.
std::vector<double> breakpoints(std::span<const KSegment> segments);

}  // namespace ndmm
