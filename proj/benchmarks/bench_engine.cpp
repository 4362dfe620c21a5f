#include <benchmark/benchmark.h>

#include "ndmm/engine.hpp"
#include "ndmm/io.hpp"
#include "support/generators.hpp"

namespace {

ndmm::DecisionProblem problem_of_size(int n, int m, std::uint64_t seed) {
  ndmm::testing::Rng rng(seed);
  ndmm::testing::ProblemShape shape;
  shape.min_n = shape.max_n = n;
  shape.min_m = shape.max_m = m;
  shape.ind_range = 3;
  return ndmm::testing::random_problem(rng, shape);
}

void BM_Evaluate(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  const auto p = problem_of_size(size, size, 7);
  for (auto _ : state) benchmark::DoNotOptimize(ndmm::evaluate(p, {0, 1, 0.5}));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Evaluate)->RangeMultiplier(2)->Range(4, 128)->Complexity();

void BM_KSensitivity(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  const auto p = problem_of_size(size, size, 11);
  for (auto _ : state) benchmark::DoNotOptimize(ndmm::k_sensitivity(p, 0, 1));
}
BENCHMARK(BM_KSensitivity)->RangeMultiplier(2)->Range(4, 64);

void BM_ParseRating(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ndmm::parse_rating("-12.5e-1 + 3.25 I"));
}
BENCHMARK(BM_ParseRating);

void BM_DocumentRoundTrip(benchmark::State& state) {
  ndmm::ProblemDocument doc;
  doc.title = "bench";
  doc.problem = problem_of_size(10, 10, 13);
  for (auto _ : state) benchmark::DoNotOptimize(ndmm::parse_problem(ndmm::serialize_problem(doc)));
}
BENCHMARK(BM_DocumentRoundTrip);

}  // namespace

BENCHMARK_MAIN();
