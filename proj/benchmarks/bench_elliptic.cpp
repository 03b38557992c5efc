#include <benchmark/benchmark.h>

#include "isingff/elliptic.hpp"

namespace {

namespace el = isingff::elliptic;

void BM_Theta1(benchmark::State& state) {
  const double q = 0.2;
  el::cplx z(0.37, 0.21);
  for (auto _ : state) {
    benchmark::DoNotOptimize(el::theta(1, z, q));
  }
}
BENCHMARK(BM_Theta1);

void BM_JacobiComplex(benchmark::State& state) {
  const el::EllipticModulus m(0.6);
  const el::cplx u(0.4 * m.K(), 0.3 * m.Kprime());
  for (auto _ : state) {
    benchmark::DoNotOptimize(el::jacobi(u, m));
  }
}
BENCHMARK(BM_JacobiComplex);

void BM_JacobiReal(benchmark::State& state) {
  const el::EllipticModulus m(0.6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(el::jacobi(0.7, m));
  }
}
BENCHMARK(BM_JacobiReal);

}  // namespace
