#include <benchmark/benchmark.h>

#include "isingff/correlation.hpp"
#include "isingff/oracle.hpp"
#include "isingff/spectral_curve.hpp"

namespace {

using isingff::Couplings;
using isingff::SpectralTable;

void BM_OracleLabeling(benchmark::State& state) {
  const Couplings c(static_cast<int>(state.range(0)), 0.4, 0.7);
  const SpectralTable t(c);
  for (auto _ : state) {
    const isingff::oracle::SpinOperatorSet ops(c, 1);
    benchmark::DoNotOptimize(isingff::oracle::labeled_spectrum(ops, t));
  }
}
BENCHMARK(BM_OracleLabeling)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Correlation(benchmark::State& state) {
  const SpectralTable t(Couplings(static_cast<int>(state.range(0)), 0.4, 0.7));
  for (auto _ : state) {
    benchmark::DoNotOptimize(isingff::two_point_correlation(t, 6, 2, 1, 1, 1));
  }
}
BENCHMARK(BM_Correlation)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_CorrelationTruncated(benchmark::State& state) {
  const SpectralTable t(Couplings(static_cast<int>(state.range(0)), 0.4, 0.7));
  const int cutoff = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(isingff::two_point_correlation(t, 6, 2, 1, 1, 1, cutoff));
  }
}
BENCHMARK(BM_CorrelationTruncated)->Args({32, 2})->Args({12, 4})->Unit(benchmark::kMillisecond);

}  // namespace
