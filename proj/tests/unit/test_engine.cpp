#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "doctest.h"
#include "ndmm/engine.hpp"
#include "support/generators.hpp"

using namespace ndmm;
using ndmm::testing::ProblemShape;
using ndmm::testing::Rng;
using ndmm::testing::worked_example;

namespace {

constexpr double kTol = 1e-9;

std::vector<std::size_t> identity_perm(std::size_t m) {
  std::vector<std::size_t> v(m);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

bool is_permutation_of_indices(const std::vector<std::size_t>& ranking, std::size_t m) {
  auto sorted = ranking;
  std::sort(sorted.begin(), sorted.end());
  return sorted == identity_perm(m);
}

}  // namespace

TEST_CASE("score_neutro on the worked example") {
  const auto scores = score_neutro(worked_example());
  REQUIRE(scores.size() == 3);
  CHECK(scores[0] == NeutroValue{44, 0});
  CHECK(scores[1] == NeutroValue{28, 3});
  CHECK(scores[2] == NeutroValue{43, 2});
}

TEST_CASE("score_neutro edge cases") {
  auto p = worked_example();
  for (auto& c : p.criteria) c.weight = 0;
  for (const auto& s : score_neutro(p)) CHECK(s == NeutroValue{0, 0});

  DecisionProblem one;
  one.criteria = {{"c", "", 1}};
  one.alternatives = {{"a", ""}, {"b", ""}, {"c", ""}};
  one.ratings = {{{1.5, 0}, {-2, 0.25}, {0, 1}}};
  CHECK(score_neutro(one) == std::vector<NeutroValue>{{1.5, 0}, {-2, 0.25}, {0, 1}});

  auto bad = worked_example();
  bad.criteria[0].weight = -1;
  CHECK_THROWS_AS(score_neutro(bad), InvalidProblemError);
  try {
    score_neutro(bad);
  } catch (const InvalidProblemError& e) {
    REQUIRE(e.diagnostics().size() == 1);
    CHECK(e.diagnostics()[0].code == Diagnostic::Code::kNegativeWeight);
  }
}

TEST_CASE("score_classical") {
  DecisionProblem p;
  p.scheme = RatingScheme::baseline();
  p.criteria = {{"c1", "", 1}, {"c2", "", 1}};
  p.alternatives = {{"A1", ""}, {"A2", ""}};
  p.ratings = {{{1, 0}, {-1, 0}}, {{0, 0}, {1, 0}}};
  // Oracle: 1*1 + 1*0 = 1 and 1*(-1) + 1*1 = 0.
  CHECK(score_classical(p) == std::vector<double>{1, 0});

  try {
    score_classical(worked_example());
    FAIL("expected an error");
  } catch (const InvalidProblemError& e) {
    REQUIRE(e.diagnostics().size() == 2);
    CHECK(e.diagnostics()[0].code == Diagnostic::Code::kIndeterminateRating);
    CHECK(e.diagnostics()[0].message == "indeterminate rating in classical mode");
    CHECK(e.diagnostics()[0].row == 1u);
    CHECK(e.diagnostics()[0].column == 1u);
  }

  auto first = worked_example();
  first.alternatives.resize(1);
  for (auto& row : first.ratings) row.resize(1);
  CHECK(score_classical(first) == std::vector<double>{44});
}

TEST_CASE("deneutrosophy") {
  const std::vector<NeutroValue> s{{44, 0}, {28, 3}, {43, 2}};
  CHECK(deneutrosophy(s, {0, 1, 0}) == std::vector<Interval>{{44, 44}, {28, 31}, {43, 45}});
  // Oracle: 28 + 3*(-1) = 25, 28 + 3*1 = 31.
  const std::vector<NeutroValue> a2{{28, 3}};
  CHECK(deneutrosophy(a2, {-1, 1, 0}) == std::vector<Interval>{{25, 31}});
  const std::vector<NeutroValue> crisp{{1, 0}, {-7.5, 0}};
  for (const auto& iv : deneutrosophy(crisp, {-0.3, 0.9, 0})) CHECK(iv.is_point());
  CHECK_THROWS_AS(deneutrosophy(s, {1, 0, 0}), ConfigError);
}

TEST_CASE("select on the worked example") {
  const std::vector<Interval> iv{{44, 44}, {28, 31}, {43, 45}};

  const auto at0 = select(iv, 0);
  CHECK(at0.selected_index == 0);
  CHECK(at0.ranking == std::vector<std::size_t>{0, 2, 1});
  REQUIRE(at0.contentions.size() == 1);
  CHECK(at0.contentions[0] == Contention{0, 2, 44, 0, 1});

  const auto at_half = select(iv, 0.5);
  CHECK(at_half.selected_index == 2);
  CHECK(at_half.ranking == std::vector<std::size_t>{2, 0, 1});
  CHECK(at_half.contentions[0].threshold == 44.5);

  for (double k : {0.001, 1.0, 7.0}) CHECK(select(iv, k).selected_index == 2);
}

TEST_CASE("select basics") {
  CHECK(select(std::vector<Interval>{{0, 0}, {5, 5}}, 0).selected_index == 1);
  CHECK(select(std::vector<Interval>{{0, 0}, {5, 5}}, 3).selected_index == 1);
  CHECK_THROWS_AS(select(std::vector<Interval>{}, 0), Error);
  CHECK_THROWS_AS(select(std::vector<Interval>{{0, 0}}, -1), ConfigError);

  SUBCASE("interval tie-breaking") {
    // Same midpoint 5: higher hi first, then narrower, then lower index.
    const std::vector<Interval> iv{{4, 6}, {3, 7}, {4, 6}, {5, 5}};
    // [5,5] sits strictly inside the others; at k=0 it wins (5 >= 5).
    CHECK(select(iv, 0).ranking == std::vector<std::size_t>{3, 1, 0, 2});
    CHECK(select(iv, 0.1).ranking == std::vector<std::size_t>{1, 0, 2, 3});
  }

  SUBCASE("point at an interval endpoint is not a contention") {
    const auto s = select(std::vector<Interval>{{45, 45}, {43, 45}}, 2);
    CHECK(s.contentions.empty());
    CHECK(s.selected_index == 0);
  }
}

TEST_CASE("select with cyclic pairwise preferences still returns a permutation") {
  // crisp 44 loses to [40,47.9] (k=0.1), beats [43.94,43.99] on midpoint, which beats [40,47.9].
  const std::vector<Interval> iv{{44, 44}, {40, 47.9}, {43.94, 43.99}};
  CHECK(prefers(iv[0], 0, iv[2], 2, 0.1));
  CHECK(prefers(iv[2], 2, iv[1], 1, 0.1));
  CHECK(prefers(iv[1], 1, iv[0], 0, 0.1));
  const auto s = select(iv, 0.1);
  CHECK(is_permutation_of_indices(s.ranking, 3));
  CHECK(s.selected_index == s.ranking.front());
}

TEST_CASE("evaluate") {
  const auto p = worked_example();

  const auto r0 = evaluate(p, {0, 1, 0});
  CHECK(r0.selected_index == 0);
  CHECK(r0.intervals == std::vector<Interval>{{44, 44}, {28, 31}, {43, 45}});
  CHECK(r0.warnings.empty());

  const auto r1 = evaluate(p, {0, 1, 1});
  CHECK(r1.selected_index == 2);
  REQUIRE(r1.warnings.size() == 1);
  CHECK(r1.warnings[0] == "k = 1 equals the admissible bound 1 = 45 - 44 for A1 within A3");

  const auto r2 = evaluate(p, {0, 1, 2});
  REQUIRE(r2.warnings.size() == 1);
  CHECK(r2.warnings[0].find("exceeds") != std::string::npos);

  const auto wide = evaluate(p, {-2, 1, 0});
  CHECK(wide.warnings.front().find("outside the recommended range") != std::string::npos);

  DecisionProblem tiny;
  tiny.criteria = {{"c", "", 2.5}};
  tiny.alternatives = {{"only", ""}};
  tiny.ratings = {{{4, 0}}};
  const auto rt = evaluate(tiny, {0, 1, 0});
  CHECK(rt.neutro_scores[0] == NeutroValue{10, 0});
  CHECK(rt.selected_index == 0);
  CHECK(rt.ranking == std::vector<std::size_t>{0});

  CHECK_THROWS_AS(evaluate(p, {1, 0, 0}), ConfigError);
  CHECK_THROWS_AS(evaluate(p, {0, 1, -0.5}), ConfigError);
}

TEST_CASE("k_sensitivity on the worked example") {
  const auto segs = k_sensitivity(worked_example(), 0, 1);
  REQUIRE(segs.size() == 2);
  CHECK(segs[0] == KSegment{0, true, 0, 0});
  CHECK(segs[1].from == 0);
  CHECK_FALSE(segs[1].from_inclusive);
  CHECK(segs[1].unbounded());
  CHECK(segs[1].selected_index == 2);
  CHECK(breakpoints(segs) == std::vector<double>{0});
}

TEST_CASE("k_sensitivity edge cases") {
  DecisionProblem p;
  p.criteria = {{"c", "", 1}};
  p.alternatives = {{"A", ""}, {"B", ""}};

  SUBCASE("no contention") {
    p.ratings = {{{1, 0}, {3, 0}}};
    const auto segs = k_sensitivity(p, 0, 1);
    REQUIRE(segs.size() == 1);
    CHECK(segs[0].from == 0);
    CHECK(segs[0].unbounded());
    CHECK(segs[0].selected_index == 1);
  }

  SUBCASE("negative kCritical: interval wins for every k") {
    // crisp 44 within 40 + 10I over [0,1] = [40,50], midpoint 45.
    p.ratings = {{{44, 0}, {40, 10}}};
    const auto segs = k_sensitivity(p, 0, 1);
    REQUIRE(segs.size() == 1);
    CHECK(segs[0].selected_index == 1);
    for (int s = 0; s <= 400; ++s) {
      const double k = s * 0.025;
      CHECK(select(std::vector<Interval>{{44, 44}, {40, 50}}, k).selected_index == 1);
    }
  }

  SUBCASE("positive kCritical") {
    // crisp 46 within [40,50]: wins while k <= 1.
    p.ratings = {{{46, 0}, {40, 10}}};
    const auto segs = k_sensitivity(p, 0, 1);
    REQUIRE(segs.size() == 2);
    CHECK(segs[0] == KSegment{0, true, 1, 0});
    CHECK(segs[1].from == 1);
    CHECK(segs[1].selected_index == 1);
  }

  SUBCASE("single alternative") {
    DecisionProblem one;
    one.criteria = {{"c", "", 1}};
    one.alternatives = {{"A", ""}};
    one.ratings = {{{0, 1}}};
    const auto segs = k_sensitivity(one, 0, 1);
    REQUIRE(segs.size() == 1);
    CHECK(segs[0].selected_index == 0);
  }
}

TEST_CASE("k_sensitivity agrees with select on a dense k grid") {
  Rng rng(21);
  ProblemShape shape;
  shape.max_n = 4;
  shape.max_m = 6;
  shape.ind_range = 2;
  shape.rating_range = 3;
  for (int trial = 0; trial < 200; ++trial) {
    auto p = testing::random_problem(rng, shape);
    // Make some ratings crisp so contentions arise.
    for (std::size_t j = 0; j < p.alternatives.size(); j += 2) {
      for (auto& row : p.ratings) row[j].ind = 0;
    }
    const auto segs = k_sensitivity(p, 0, 1);
    const auto intervals = deneutrosophy(score_neutro(p), {0, 1, 0});
    for (int s = 0; s <= 300; ++s) {
      const double k = s * 0.05;
      const auto it = std::find_if(segs.begin(), segs.end(), [&](const KSegment& g) {
        const bool above = g.from_inclusive ? k >= g.from : k > g.from;
        return above && k <= g.to;
      });
      REQUIRE(it != segs.end());
      // Skip probes within the tie tolerance of a breakpoint.
      const auto bps = breakpoints(segs);
      if (std::any_of(bps.begin(), bps.end(), [&](double b) { return std::abs(b - k) < 1e-6; })) continue;
      CHECK(select(intervals, k).selected_index == it->selected_index);
    }
  }
}

TEST_CASE("DMM and NDMM agree on crisp problems") {
  Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const auto p = testing::random_problem(rng, {});
    const auto classical = score_classical(p);
    const double lo = testing::uniform(rng, -1, 0);
    const auto r = evaluate(p, {lo, lo + 1, testing::uniform(rng, 0, 2)});
    auto expected = identity_perm(classical.size());
    std::stable_sort(expected.begin(), expected.end(),
                     [&](std::size_t a, std::size_t b) { return classical[a] > classical[b]; });
    for (std::size_t j = 0; j < classical.size(); ++j) {
      CHECK(r.intervals[j].is_point());
      CHECK(std::abs(r.intervals[j].lo - classical[j]) <= kTol);
    }
    CHECK(r.ranking == expected);
  }
}

TEST_CASE("ranking invariant under positive weight scaling") {
  Rng rng(41);
  ProblemShape shape;
  shape.ind_range = 3;
  for (int trial = 0; trial < 200; ++trial) {
    auto p = testing::random_problem(rng, shape);
    const auto base = evaluate(p, {0, 1, 0});
    for (double lambda : {0.5, 2.0, 10.0}) {
      auto q = p;
      for (auto& c : q.criteria) c.weight *= lambda;
      const auto r = evaluate(q, {0, 1, 0});
      CHECK(r.ranking == base.ranking);
      CHECK(r.selected_index == base.selected_index);
    }
  }
}

TEST_CASE("permutation equivariance") {
  Rng rng(51);
  ProblemShape shape;
  shape.ind_range = 2;
  shape.bare_i_probability = 0.1;
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = testing::random_problem(rng, shape);
    const std::size_t m = p.alternatives.size();
    auto perm = identity_perm(m);
    std::shuffle(perm.begin(), perm.end(), rng);
    auto q = p;
    for (std::size_t j = 0; j < m; ++j) {
      q.alternatives[j] = p.alternatives[perm[j]];
      for (std::size_t i = 0; i < p.ratings.size(); ++i) q.ratings[i][j] = p.ratings[i][perm[j]];
    }
    const EvaluationConfig cfg{0, 1, testing::uniform(rng, 0, 1)};
    const auto rp = evaluate(p, cfg);
    const auto rq = evaluate(q, cfg);
    for (std::size_t j = 0; j < m; ++j) {
      CHECK(rq.neutro_scores[j] == rp.neutro_scores[perm[j]]);
      CHECK(rq.intervals[j] == rp.intervals[perm[j]]);
    }
    for (std::size_t r = 0; r < m; ++r) CHECK(perm[rq.ranking[r]] == rp.ranking[r]);
    CHECK(q.alternatives[rq.selected_index].id == p.alternatives[rp.selected_index].id);
  }
}

TEST_CASE("raising a rating never lowers that alternative's midpoint") {
  Rng rng(61);
  ProblemShape shape;
  shape.ind_range = 2;
  for (int trial = 0; trial < 500; ++trial) {
    auto p = testing::random_problem(rng, shape);
    const auto before = evaluate(p, {0, 1, 0});
    const auto i = static_cast<std::size_t>(testing::uniform_int(rng, 0, static_cast<int>(p.criteria.size()) - 1));
    const auto j = static_cast<std::size_t>(testing::uniform_int(rng, 0, static_cast<int>(p.alternatives.size()) - 1));
    p.ratings[i][j].det += testing::uniform(rng, 0, 5);
    const auto after = evaluate(p, {0, 1, 0});
    CHECK(after.intervals[j].midpoint() >= before.intervals[j].midpoint() - kTol);
  }
}

TEST_CASE("a dominating interval is selected for every k") {
  Rng rng(71);
  ProblemShape shape;
  shape.ind_range = 1;
  for (int trial = 0; trial < 300; ++trial) {
    auto p = testing::random_problem(rng, shape);
    const auto j = static_cast<std::size_t>(testing::uniform_int(rng, 0, static_cast<int>(p.alternatives.size()) - 1));
    const auto intervals = deneutrosophy(score_neutro(p), {0, 1, 0});
    bool dominates = true;
    for (std::size_t b = 0; b < intervals.size(); ++b) {
      if (b != j && !(intervals[j].lo > intervals[b].hi)) dominates = false;
    }
    if (!dominates) continue;
    for (double k : {0.0, 0.5, 3.0, 100.0}) CHECK(select(intervals, k).selected_index == j);
  }
  // Constructed case so the property is exercised regardless of sampling.
  const std::vector<Interval> iv{{0, 2}, {10, 12}, {5, 5}};
  for (double k : {0.0, 1.0, 50.0}) CHECK(select(iv, k).selected_index == 1);
}

TEST_CASE("crisp wins a contention exactly on a prefix [0, kCritical] of k") {
  Rng rng(81);
  for (int trial = 0; trial < 300; ++trial) {
    const double lo = testing::uniform(rng, -10, 10);
    const double hi = lo + testing::uniform(rng, 0.1, 10);
    const double s = testing::uniform(rng, lo + 1e-3, hi - 1e-3);
    const Interval point{s, s};
    const Interval area{lo, hi};
    const double k_critical = s - area.midpoint();
    bool lost = false;
    for (int step = 0; step <= 200; ++step) {
      const double k = step * 0.05;
      const bool crisp_wins = prefers(point, 0, area, 1, k);
      if (lost) CHECK_FALSE(crisp_wins);
      if (!crisp_wins) lost = true;
      if (std::abs(k - k_critical) > 1e-6) CHECK(crisp_wins == (k <= k_critical));
    }
  }
}

TEST_CASE("interval endpoints match a 101-point grid oracle") {
  Rng rng(91);
  ProblemShape shape;
  shape.ind_range = 3;
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = testing::random_problem(rng, shape);
    double a = testing::uniform(rng, -1, 1);
    double b = testing::uniform(rng, -1, 1);
    if (a > b) std::swap(a, b);
    const auto r = evaluate(p, {a, b, 0});
    const auto g = testing::grid_extremes(p, a, b);
    for (std::size_t j = 0; j < r.intervals.size(); ++j) {
      CHECK(std::abs(r.intervals[j].lo - g.lo[j]) <= kTol);
      CHECK(std::abs(r.intervals[j].hi - g.hi[j]) <= kTol);
    }
  }
}
