#include "ndmm/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ndmm/io.hpp"

namespace ndmm {

namespace {

bool strictly_inside(double x, const Interval& b) { return b.lo < x && x < b.hi; }

// Exact lexicographic key: midpoint desc, hi desc, width asc, index asc.
bool base_before(const Interval& a, std::size_t ai, const Interval& b, std::size_t bi) {
  if (a.midpoint() != b.midpoint()) return a.midpoint() > b.midpoint();
  if (a.hi != b.hi) return a.hi > b.hi;
  if (a.width() != b.width()) return a.width() < b.width();
  return ai < bi;
}

void require_valid(const DecisionProblem& problem) {
  if (auto diagnostics = validate_problem(problem); !diagnostics.empty()) {
    throw InvalidProblemError(std::move(diagnostics));
  }
}

}  // namespace

void check_config(const EvaluationConfig& cfg) {
  if (!std::isfinite(cfg.i_min) || !std::isfinite(cfg.i_max) || cfg.i_min > cfg.i_max) {
    throw ConfigError("invalid I-bounds");
  }
  if (!std::isfinite(cfg.k) || cfg.k < 0.0) throw ConfigError("k must be a finite value >= 0");
}

std::vector<NeutroValue> score_neutro(const DecisionProblem& problem) {
  require_valid(problem);
  const std::size_t n = problem.criterion_count();
  const std::size_t m = problem.alternative_count();
  std::vector<NeutroValue> scores(m);
  for (std::size_t j = 0; j < m; ++j) {
    NeutroValue sum;
    for (std::size_t i = 0; i < n; ++i) {
      sum = nv_add(sum, nv_scale(problem.criteria[i].weight, problem.ratings[i][j]));
    }
    scores[j] = sum;
  }
  return scores;
}

std::vector<double> score_classical(const DecisionProblem& problem) {
  require_valid(problem);
  std::vector<Diagnostic> indeterminate;
  for (std::size_t i = 0; i < problem.ratings.size(); ++i) {
    for (std::size_t j = 0; j < problem.ratings[i].size(); ++j) {
      if (!problem.ratings[i][j].is_crisp()) {
        indeterminate.push_back({Diagnostic::Code::kIndeterminateRating,
                                 "indeterminate rating in classical mode", i, j});
      }
    }
  }
  if (!indeterminate.empty()) throw InvalidProblemError(std::move(indeterminate));

  const auto neutro = score_neutro(problem);
  std::vector<double> out(neutro.size());
  std::transform(neutro.begin(), neutro.end(), out.begin(), [](const NeutroValue& v) { return v.det; });
  return out;
}

std::vector<Interval> deneutrosophy(std::span<const NeutroValue> scores, const EvaluationConfig& cfg) {
  std::vector<Interval> out;
  out.reserve(scores.size());
  for (const auto& s : scores) out.push_back(nv_to_interval(s, cfg.i_min, cfg.i_max));
  return out;
}

bool prefers(const Interval& a, std::size_t ai, const Interval& b, std::size_t bi, double k) {
  if (a.is_point() && strictly_inside(a.lo, b)) return a.lo >= b.midpoint() + k - kTieTolerance;
  if (b.is_point() && strictly_inside(b.lo, a)) return !(b.lo >= a.midpoint() + k - kTieTolerance);

  const double ma = a.midpoint();
  const double mb = b.midpoint();
  if (std::abs(ma - mb) > kTieTolerance) return ma > mb;
  if (a.hi != b.hi) return a.hi > b.hi;
  if (a.width() != b.width()) return a.width() < b.width();
  return ai < bi;
}

Selection select(std::span<const Interval> intervals, double k) {
  if (intervals.empty()) throw Error("cannot select from an empty list of alternatives");
  if (!std::isfinite(k) || k < 0.0) throw ConfigError("k must be a finite value >= 0");

  const std::size_t m = intervals.size();
  Selection sel;

  for (std::size_t c = 0; c < m; ++c) {
    if (!intervals[c].is_point()) continue;
    const double s = intervals[c].lo;
    for (std::size_t b = 0; b < m; ++b) {
      if (b == c || !strictly_inside(s, intervals[b])) continue;
      const double mid = intervals[b].midpoint();
      sel.contentions.push_back({c, b, mid + k, s - mid, intervals[b].hi - s});
    }
  }

  // Pairwise preference matrix and win counts.
  std::vector<char> beats(m * m, 0);
  std::vector<std::size_t> wins(m, 0);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      const bool a_first = prefers(intervals[a], a, intervals[b], b, k);
      beats[a * m + b] = a_first;
      beats[b * m + a] = !a_first;
      ++wins[a_first ? a : b];
    }
  }

  std::vector<std::size_t> base(m);
  std::iota(base.begin(), base.end(), std::size_t{0});
  std::sort(base.begin(), base.end(), [&](std::size_t a, std::size_t b) {
    return base_before(intervals[a], a, intervals[b], b);
  });

  std::vector<char> taken(m, 0);
  sel.ranking.reserve(m);
  for (std::size_t round = 0; round < m; ++round) {
    std::size_t best = m;
    for (std::size_t idx : base) {
      if (taken[idx]) continue;
      if (best == m || wins[idx] > wins[best]) best = idx;
    }
    taken[best] = 1;
    sel.ranking.push_back(best);
    for (std::size_t r = 0; r < m; ++r) {
      if (!taken[r] && beats[r * m + best]) --wins[r];
    }
  }
  sel.selected_index = sel.ranking.front();
  return sel;
}

EvaluationResult evaluate(const DecisionProblem& problem, const EvaluationConfig& cfg) {
  check_config(cfg);
  EvaluationResult result;
  result.config = cfg;
  result.neutro_scores = score_neutro(problem);
  result.intervals = deneutrosophy(result.neutro_scores, cfg);
  auto sel = select(result.intervals, cfg.k);
  result.selected_index = sel.selected_index;
  result.ranking = std::move(sel.ranking);
  result.contentions = std::move(sel.contentions);

  if (cfg.i_min < -1.0 || cfg.i_max > 1.0) {
    result.warnings.push_back("I-bounds [" + format_number(cfg.i_min) + ", " + format_number(cfg.i_max) +
                              "] lie outside the recommended range [-1, 1]");
  }
  for (const auto& c : result.contentions) {
    if (cfg.k < c.k_admissible - kTieTolerance) continue;
    const bool equal = std::abs(cfg.k - c.k_admissible) <= kTieTolerance;
    const auto& crisp = problem.alternatives[c.crisp_index].id;
    const auto& area = problem.alternatives[c.interval_index].id;
    result.warnings.push_back(
        "k = " + format_number(cfg.k) + (equal ? " equals" : " exceeds") + " the admissible bound " +
        format_number(c.k_admissible) + " = " + format_number(result.intervals[c.interval_index].hi) + " - " +
        format_number(result.intervals[c.crisp_index].lo) + " for " + crisp + " within " + area);
  }
  return result;
}

std::vector<KSegment> k_sensitivity(const DecisionProblem& problem, double i_min, double i_max) {
  const EvaluationConfig cfg{i_min, i_max, 0.0};
  check_config(cfg);
  const auto intervals = deneutrosophy(score_neutro(problem), cfg);
  const auto contentions = select(intervals, 0.0).contentions;

  // Breakpoints: kCritical values reachable for k >= 0, merged when closer than the tie tolerance.
  std::vector<double> cuts;
  for (const auto& c : contentions) {
    if (c.k_critical < -kTieTolerance) continue;
    cuts.push_back(std::max(0.0, c.k_critical));
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> uniq;
  for (double x : cuts) {
    if (uniq.empty() || x - uniq.back() > 2 * kTieTolerance) uniq.push_back(x);
  }

  // Each piece is closed on the right, so its right end is a valid probe;
  // the unbounded tail is probed one unit past the last cut.
  std::vector<KSegment> pieces;
  double from = 0.0;
  bool from_inclusive = true;
  for (double cut : uniq) {
    pieces.push_back({from, from_inclusive, cut, select(intervals, cut).selected_index});
    from = cut;
    from_inclusive = false;
  }
  const double tail_probe = uniq.empty() ? 0.0 : uniq.back() + 1.0;
  pieces.push_back({from, from_inclusive, std::numeric_limits<double>::infinity(),
                    select(intervals, tail_probe).selected_index});

  std::vector<KSegment> merged;
  for (const auto& p : pieces) {
    if (!merged.empty() && merged.back().selected_index == p.selected_index) {
      merged.back().to = p.to;
    } else {
      merged.push_back(p);
    }
  }
  return merged;
}

std::vector<double> breakpoints(std::span<const KSegment> segments) {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < segments.size(); ++i) out.push_back(segments[i].to);
  return out;
}

}  // namespace ndmm
