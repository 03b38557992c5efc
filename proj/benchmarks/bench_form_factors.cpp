#include <benchmark/benchmark.h>

#include "isingff/form_factors.hpp"
#include "isingff/spectral_curve.hpp"

namespace {

using isingff::Couplings;
using isingff::FockState;
using isingff::FormFactorSpec;
using isingff::Sector;
using isingff::SpectralTable;

// Bra and ket with the given number of particles each.
FormFactorSpec make_spec(int n, int particles) {
  std::vector<int> bra;
  std::vector<int> ket;
  for (int i = 0; i < particles; ++i) {
    bra.push_back(2 * i);
    ket.push_back(2 * i + 1);
  }
  return {0, FockState(Sector::antiperiodic, bra, n), FockState(Sector::periodic, ket, n), n};
}

void BM_SpectralTable(benchmark::State& state) {
  const Couplings c(static_cast<int>(state.range(0)), 0.4, 0.7);
  for (auto _ : state) {
    SpectralTable t(c);
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(BM_SpectralTable)->Arg(8)->Arg(64)->Arg(512);

void BM_FfClosed(benchmark::State& state) {
  const int n = 64;
  const SpectralTable t(Couplings(n, 0.4, 0.7));
  const auto spec = make_spec(n, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(isingff::ff_closed(spec, t));
  }
}
BENCHMARK(BM_FfClosed)->Arg(1)->Arg(4)->Arg(16);

void BM_FfPfaffian(benchmark::State& state) {
  const int n = 64;
  const SpectralTable t(Couplings(n, 0.4, 0.7));
  const auto spec = make_spec(n, static_cast<int>(state.range(0)));
  const auto mats = isingff::two_particle_matrices(t, spec.site);
  const double vacuum = isingff::vacuum_overlap(t);
  for (auto _ : state) {
    benchmark::DoNotOptimize(isingff::ff_pfaffian(spec, mats, vacuum));
  }
}
BENCHMARK(BM_FfPfaffian)->Arg(1)->Arg(4)->Arg(16);

}  // namespace
