#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "nagplan/cutpoint.hpp"
#include "nagplan/oracle.hpp"
#include "nagplan/search.hpp"
#include "nagplan/tether.hpp"

using namespace nagplan;

namespace {

void BM_FlatSingleGoal(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto env = fixtures::flat(n, n);
  StopCriterion stop;
  stop.goal = GoalStop{{n - 1, n - 1, 0}, 1};
  std::size_t expansions = 0;
  for (auto _ : state) {
    const auto r = search_nag(env, {0, 0, 0}, stop, PnsParams::defaults_2d());
    expansions = r.expansions;
    benchmark::DoNotOptimize(r.goal_ids);
  }
  state.counters["expansions"] = static_cast<double>(expansions);
  state.SetComplexityN(static_cast<benchmark::IterationCount>(n) * n);
}
BENCHMARK(BM_FlatSingleGoal)->RangeMultiplier(2)->Range(32, 256)->Complexity(benchmark::oNLogN);

void BM_TwoObstacleThreeClasses(benchmark::State& state) {
  const PnsParams p{2.0, 0.6, 4, 3};
  const auto f = fixtures::two_obstacle_fixtures(1, p).front();
  StopCriterion stop;
  stop.goal = GoalStop{f.goal, 3};
  for (auto _ : state) benchmark::DoNotOptimize(search_nag(f.env, f.start, stop, p).goal_ids);
}
BENCHMARK(BM_TwoObstacleThreeClasses);

void BM_HAugmentedOracle(benchmark::State& state) {
  const PnsParams p{2.0, 0.6, 4, 3};
  const auto f = fixtures::two_obstacle_fixtures(1, p).front();
  const auto rays = oracle::make_ray_set(f.env);
  for (auto _ : state) benchmark::DoNotOptimize(oracle::h_augmented_dijkstra(f.env, f.start, f.goal, rays, 3));
}
BENCHMARK(BM_HAugmentedOracle);

void BM_HillCutPoints(benchmark::State& state) {
  const auto env = fixtures::gaussian_hill(1.0);
  StopCriterion stop;
  stop.goal = GoalStop{fixtures::kHillGoal, 2};
  SearchOptions opts;
  opts.cut_points = CutPointParams::defaults_2d();
  for (auto _ : state)
    benchmark::DoNotOptimize(search_nag(env, fixtures::kHillStart, stop, fixtures::hill_pns(), opts).goal_ids);
}
BENCHMARK(BM_HillCutPoints);

void BM_PrismCutPoints3d(benchmark::State& state) {
  const auto env = fixtures::prism_corner();
  StopCriterion stop;
  stop.goal = GoalStop{fixtures::kPrismGoal, 2};
  SearchOptions opts;
  opts.cut_points = CutPointParams::defaults_3d();
  for (auto _ : state)
    benchmark::DoNotOptimize(search_nag(env, fixtures::kPrismStart, stop, fixtures::prism_pns(), opts).goal_ids);
}
BENCHMARK(BM_PrismCutPoints3d)->Unit(benchmark::kMillisecond);

void BM_TetherWorkspace(benchmark::State& state) {
  const auto env = fixtures::two_rooms();
  const double l = static_cast<double>(state.range(0));
  std::size_t vertices = 0;
  for (auto _ : state) {
    const auto ws = explore_workspace(env, {fixtures::kRoomsBase, l}, PnsParams::defaults_3d());
    vertices = ws.graph.size();
    benchmark::DoNotOptimize(ws);
  }
  state.counters["vertices"] = static_cast<double>(vertices);
}
BENCHMARK(BM_TetherWorkspace)->Arg(16)->Arg(22)->Arg(30)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
