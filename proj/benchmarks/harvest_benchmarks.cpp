#include <benchmark/benchmark.h>

#include "harvest/analysis.hpp"
#include "harvest/closedform.hpp"
#include "harvest/oracle.hpp"
#include "harvest/specfun.hpp"

namespace {

using harvest::ComplexValue;
using harvest::DetectorPairConfig;

void BM_FaddeevaW(benchmark::State& state) {
  const double y = static_cast<double>(state.range(0)) / 10.0;
  ComplexValue z(0.3, y);
  for (auto _ : state) {
    benchmark::DoNotOptimize(harvest::specfun::faddeeva_w(z));
    z += ComplexValue(1e-9, 0.0);
  }
}
BENCHMARK(BM_FaddeevaW)->Arg(-30)->Arg(1)->Arg(30)->Arg(100);

void BM_ClosedFormConcurrence(benchmark::State& state) {
  DetectorPairConfig cfg{0.5, 0.25, 2.0, 0.1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(harvest::closedform::concurrence(cfg));
    cfg.l_over_sigma += 1e-12;
  }
}
BENCHMARK(BM_ClosedFormConcurrence);

void BM_XSingleIntegral(benchmark::State& state) {
  const DetectorPairConfig cfg{0.5, 0.25, 2.0, 0.1};
  const harvest::oracle::OracleSettings settings;
  for (auto _ : state) benchmark::DoNotOptimize(harvest::oracle::x_single_integral_pv(cfg, settings));
}
BENCHMARK(BM_XSingleIntegral)->Unit(benchmark::kMillisecond);

void BM_XDoubleIntegral(benchmark::State& state) {
  const DetectorPairConfig cfg{0.5, 0.25, 2.0, 0.1};
  const harvest::oracle::OracleSettings settings;
  for (auto _ : state) benchmark::DoNotOptimize(harvest::oracle::x_double_integral(cfg, settings));
}
BENCHMARK(BM_XDoubleIntegral)->Unit(benchmark::kMillisecond);

void BM_FindLmax(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(harvest::analysis::find_lmax(4.0, 2.0, 0.1));
}
BENCHMARK(BM_FindLmax)->Unit(benchmark::kMillisecond);

void BM_FindOptimalGap(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(harvest::analysis::find_optimal_gap(0.5, 2.0, 0.1));
}
BENCHMARK(BM_FindOptimalGap)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
