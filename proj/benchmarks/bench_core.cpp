#include <benchmark/benchmark.h>

#include "walklab/constants.hpp"
#include "walklab/distributions.hpp"
#include "walklab/rate_geometry.hpp"
#include "walklab/tally.hpp"
#include "walklab/walk.hpp"

using namespace walklab;

namespace {

const DimensionConstants& consts3() {
  static const DimensionConstants c = dimension_constants(3);
  return c;
}

void BM_WalkAdvance(benchmark::State& state) {
  const auto n = static_cast<std::int64_t>(state.range(0));
  std::uint64_t stream = 0;
  for (auto _ : state) {
    Walk walk(WalkConfig{3, n, 1, stream++});
    std::int64_t origin_hits = 0;
    while (!walk.done()) {
      walk.advance();
      origin_hits += walk.l1_norm() == 0;
    }
    benchmark::DoNotOptimize(origin_hits);
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_WalkAdvance)->Arg(1 << 16)->Arg(1 << 20);

void BM_TallyIngest(benchmark::State& state) {
  const auto n = static_cast<std::int64_t>(state.range(0));
  std::uint64_t stream = 0;
  for (auto _ : state) {
    Walk walk(WalkConfig{3, n, 1, stream++});
    TallyBoard board(3, n);
    board.consume(walk);
    benchmark::DoNotOptimize(board.max_local_time());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_TallyIngest)->Arg(1 << 16)->Arg(1 << 20);

void BM_SiteMapFind(benchmark::State& state) {
  Walk walk(WalkConfig{3, 1 << 18, 2, 0});
  TallyBoard board(3, 1 << 18);
  board.consume(walk);
  std::array<std::int32_t, 3> probe{0, 0, 0};
  std::uint32_t i = 0;
  for (auto _ : state) {
    probe[0] = static_cast<std::int32_t>(i % 64) - 32;
    probe[1] = static_cast<std::int32_t>((i / 64) % 64) - 32;
    ++i;
    benchmark::DoNotOptimize(board.local_time_raw(probe.data()));
  }
}
BENCHMARK(BM_SiteMapFind);

void BM_GreenFunction(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(green_function_origin(d, 1e-12));
}
BENCHMARK(BM_GreenFunction)->Arg(3)->Arg(5);

void BM_SolveBoundary(benchmark::State& state) {
  const RateSetDescriptor desc{RateSet::B, consts3()};
  double x = 0.0;
  const double lam = consts3().lambda;
  for (auto _ : state) {
    x += 0.001;
    if (x >= lam) x = 0.0;
    benchmark::DoNotOptimize(solve_boundary(desc, x));
  }
}
BENCHMARK(BM_SolveBoundary);

void BM_JointPmfLogSpace(benchmark::State& state) {
  const auto& c = consts3();
  std::int64_t k = 0;
  for (auto _ : state) {
    k = (k + 1) % 200;
    benchmark::DoNotOptimize(joint_two_point_pmf(c, k, 200 - k));
  }
}
BENCHMARK(BM_JointPmfLogSpace);

}  // namespace

BENCHMARK_MAIN();
