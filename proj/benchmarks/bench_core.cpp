#include <benchmark/benchmark.h>

#include "uconvex/experiments.hpp"

using namespace uconvex;

namespace {

void BM_SupportPBall(benchmark::State& state) {
  auto ball = make_pball({0.1, -0.2}, 1.3, 2.0);
  Vec u{0.6, 0.8};
  for (auto _ : state) benchmark::DoNotOptimize(ball->support_value(u));
}
BENCHMARK(BM_SupportPBall);

void BM_SupportIntersectionScan(benchmark::State& state) {
  auto lens = intersect(make_pball({0.3, 0.0}, 1.0, 2.0),
                        make_pball({-0.3, 0.0}, 1.0, 2.0));
  Vec u{0.6, 0.8};
  lens->support_value(u);  // warm the boundary cache
  for (auto _ : state) benchmark::DoNotOptimize(lens->support_value(u));
}
BENCHMARK(BM_SupportIntersectionScan);

void BM_BoundaryPoint(benchmark::State& state) {
  auto cap = make_power_cap(2.0);
  Vec dir{0.7, -0.7};
  for (auto _ : state)
    benchmark::DoNotOptimize(boundary_point_from(*cap, {0.0, 0.5}, dir, 1e-11));
}
BENCHMARK(BM_BoundaryPoint);

void BM_Hausdorff(benchmark::State& state) {
  SamplingCfg cfg;
  cfg.directions_2d = static_cast<int>(state.range(0));
  auto a = make_pball({0.0, 0.0}, 1.0, 2.0);
  auto b = make_polygon({{0.0, 0.0}, {1.0, 0.2}, {0.4, 1.1}, {-0.5, 0.6}});
  for (auto _ : state)
    benchmark::DoNotOptimize(hausdorff_distance(*a, *b, cfg));
}
BENCHMARK(BM_Hausdorff)->Arg(1024)->Arg(4096);

void BM_Depth(benchmark::State& state) {
  auto cap = make_power_cap(2.0);
  ModulusCfg cfg;
  cfg.depth_dirs = static_cast<int>(state.range(0));
  Vec x{0.1, 0.4};
  for (auto _ : state) benchmark::DoNotOptimize(depth(*cap, x, cfg));
}
BENCHMARK(BM_Depth)->Arg(128)->Arg(256);

void BM_EstimateModulusAt(benchmark::State& state) {
  auto ball = make_pball({0.0, 0.0}, 0.5, 2.0);
  ModulusCfg cfg;
  cfg.boundary_points = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(estimate_modulus_at(*ball, 0.6, cfg));
}
BENCHMARK(BM_EstimateModulusAt)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_ProjectBodyCg(benchmark::State& state) {
  auto e = make_ellipse({0.0, 0.0}, 2.0, 0.5, 0.3);
  ProjectionCfg cfg;
  Vec q{3.0, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(project_body(*e, q, cfg));
}
BENCHMARK(BM_ProjectBodyCg);

void BM_SplitSum(benchmark::State& state) {
  auto a = make_pball({3.0, 0.0}, 1.0, 2.0);
  auto b = make_polygon({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
  ProjectionCfg cfg;
  Vec c{3.5, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(split_sum(a, b, c, cfg));
}
BENCHMARK(BM_SplitSum);

void BM_SteinerPoint(benchmark::State& state) {
  auto tri = make_polygon({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}});
  SamplingCfg cfg;
  for (auto _ : state) benchmark::DoNotOptimize(steiner_point(*tri, cfg));
}
BENCHMARK(BM_SteinerPoint);

}  // namespace

BENCHMARK_MAIN();
