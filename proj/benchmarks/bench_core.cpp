#include <benchmark/benchmark.h>

#include "riemann2d/integrate.hpp"

namespace {

using namespace riemann2d;

void BM_ClassifyGridDisk(benchmark::State& state) {
  const auto disk = make_disk_domain(0, 0, 1);
  const int level = static_cast<int>(state.range(0));
  for (auto _ : state) {
    CellGrid grid = classify_grid(*disk, level);
    benchmark::DoNotOptimize(grid.inner_area());
  }
  state.SetItemsProcessed(state.iterations() * (1LL << (2 * level)));
}
BENCHMARK(BM_ClassifyGridDisk)->Arg(6)->Arg(8)->Arg(10);

void BM_IntegrateDoubleDisk(benchmark::State& state) {
  const auto disk = make_disk_domain(0, 0, 1);
  const auto one = make_field("one");
  const double tol = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    IntegralReport rep = integrate_double(*one, *disk, tol);
    benchmark::DoNotOptimize(rep.value);
  }
}
BENCHMARK(BM_IntegrateDoubleDisk)->Arg(100)->Arg(1000)->Arg(10000);

void BM_EpsLadderDisk(benchmark::State& state) {
  const auto disk = make_disk_domain(0, 0, 1);
  IntegrateOptions opts;
  opts.eps_terms = static_cast<int>(state.range(0));
  const auto eps = default_eps_sequence(disk->bounds(), opts);
  for (auto _ : state) {
    EpsLadder ladder = EpsLadder::build(*disk, eps, opts.grid);
    benchmark::DoNotOptimize(ladder.rung_count());
  }
}
BENCHMARK(BM_EpsLadderDisk)->Arg(6)->Arg(10)->Arg(12);

void BM_SliceColumn(benchmark::State& state) {
  const auto disk = make_disk_domain(0, 0, 1);
  IntegrateOptions opts;
  const auto eps = default_eps_sequence(disk->bounds(), opts);
  const EpsLadder ladder = EpsLadder::build(*disk, eps, opts.grid);
  const std::size_t rung = ladder.rung_count() - 1;
  double x = -0.99;
  for (auto _ : state) {
    SliceSet sl = ladder.slice_at(x, rung);
    benchmark::DoNotOptimize(sl.total_length());
    x += 0.013;
    if (x > 0.99) x = -0.99;
  }
}
BENCHMARK(BM_SliceColumn);

void BM_FatCantorContains(benchmark::State& state) {
  const FatCantorSet p = FatCantorSet::build(1.0, 2.0, static_cast<int>(state.range(0)));
  double y = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(p.contains(y));
    y += 1e-4;
    if (y > 2.0) y = 1.0;
  }
}
BENCHMARK(BM_FatCantorContains)->Arg(8)->Arg(16)->Arg(24);

void BM_InnerImproperDisk(benchmark::State& state) {
  const auto disk = make_disk_domain(0, 0, 1);
  const auto poly = make_field("poly");
  IntegrateOptions opts;
  const auto eps = default_eps_sequence(disk->bounds(), opts);
  for (auto _ : state) {
    IntegralReport rep = inner_improper_integral(*poly, *disk, 0.37, eps, 1e-3, opts);
    benchmark::DoNotOptimize(rep.value);
  }
}
BENCHMARK(BM_InnerImproperDisk);

}  // namespace

BENCHMARK_MAIN();
