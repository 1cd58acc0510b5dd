#include "hyplap/geometry.hpp"
#include "hyplap/kernels.hpp"
#include "hyplap/quadrature.hpp"

#include <benchmark/benchmark.h>

using namespace hyplap;

namespace {

Vector diagonal(int n, double r) { return Vector::Constant(n, r / std::sqrt(double(n))); }

void BM_MobiusApply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const MobiusMap t = MobiusMap::T(BallPoint(diagonal(n, 0.6)));
  const Vector x = unit_vector(n, 0) * 0.3;
  for (auto _ : state) benchmark::DoNotOptimize(t(x));
}
BENCHMARK(BM_MobiusApply)->Arg(2)->Arg(3)->Arg(6);

void BM_PoissonKernel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BallPoint x(diagonal(n, 0.7));
  const SpherePoint t(unit_vector(n, n - 1));
  for (auto _ : state) benchmark::DoNotOptimize(poisson_kernel_ball(x, t));
}
BENCHMARK(BM_PoissonKernel)->Arg(3)->Arg(6);

void BM_GreenRadial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  green_radial(n, 0.5);
  double r = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(green_radial(n, r));
    r = r > 0.98 ? 0.01 : r + 0.013;
  }
}
BENCHMARK(BM_GreenRadial)->Arg(2)->Arg(3)->Arg(5)->Arg(6);

void BM_GreenGradient(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BallPoint x(diagonal(n, 0.4));
  const BallPoint y(unit_vector(n, 0) * -0.5);
  for (auto _ : state) benchmark::DoNotOptimize(green_gradient(x, y));
}
BENCHMARK(BM_GreenGradient)->Arg(3)->Arg(6);

void BM_SphereRule(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int level = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(sphere_rule(n, level));
  state.counters["nodes"] = static_cast<double>(sphere_rule_size(n, level));
}
BENCHMARK(BM_SphereRule)->Args({3, 16})->Args({3, 32})->Args({4, 12})->Args({6, 6})->Unit(benchmark::kMicrosecond);

void BM_BallTauRule(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ball_tau_rule(n, 12, 10, 0.9));
}
BENCHMARK(BM_BallTauRule)->Arg(3)->Arg(4)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
