#include "hyplap/catalog.hpp"
#include "hyplap/halfspace.hpp"
#include "hyplap/solver.hpp"

#include <benchmark/benchmark.h>

using namespace hyplap;

namespace {

// |x| = 1 - 2^-k: cost growth as the point nears the boundary.
BallPoint near_pole(int n, int k) { return BallPoint(unit_vector(n, n - 1) * (1.0 - std::ldexp(1.0, -k))); }

void BM_PoissonIntegral(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BallPoint x = near_pole(n, static_cast<int>(state.range(1)));
  const BoundaryData phi = boundary_zonal_bump(n, unit_vector(n, 0), 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(poisson_integral(phi, x));
}
BENCHMARK(BM_PoissonIntegral)->Args({3, 2})->Args({3, 10})->Args({4, 2})->Unit(benchmark::kMicrosecond);

void BM_PoissonIntegralCachedRule(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BallPoint x = near_pole(n, 4);
  const BoundaryData phi = boundary_holder_spike(n, 0.5, unit_vector(n, 0));
  const QuadratureRule rule = poisson_rule(x);
  for (auto _ : state) benchmark::DoNotOptimize(poisson_integral(phi, x, rule));
}
BENCHMARK(BM_PoissonIntegralCachedRule)->Arg(3)->Arg(4)->Unit(benchmark::kMicrosecond);

void BM_GreenPotential(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BallPoint x = near_pole(n, static_cast<int>(state.range(1)));
  const SourceDensity psi = source_defect(n);
  for (auto _ : state) benchmark::DoNotOptimize(green_potential(psi, x));
}
BENCHMARK(BM_GreenPotential)->Args({3, 2})->Args({3, 8})->Args({4, 2})->Unit(benchmark::kMillisecond);

void BM_SolveDirichlet(benchmark::State& state) {
  const int n = 3;
  const SolutionField field(boundary_constant(n, 1.0), source_defect_power(n, 2.0));
  const BallPoint x = near_pole(n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(field.evaluate(x));
}
BENCHMARK(BM_SolveDirichlet)->Unit(benchmark::kMillisecond);

void BM_HalfspacePoissonIntegral(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CompactC1Data f = halfspace_bump(n, 1.0, Vector::Zero(n - 1));
  const HalfSpacePoint z(Vector::Constant(n - 1, 0.2), 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(poisson_integral_halfspace(f, z));
}
BENCHMARK(BM_HalfspacePoissonIntegral)->Arg(2)->Arg(3)->Unit(benchmark::kMicrosecond);

void BM_HalfspaceNormalDerivative(benchmark::State& state) {
  const int n = 3;
  const CompactC1Data f = halfspace_bump(n, 1.0, Vector::Zero(n - 1));
  const HalfSpacePoint z(Vector::Zero(n - 1), std::ldexp(1.0, -static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(normal_derivative(f, z));
}
BENCHMARK(BM_HalfspaceNormalDerivative)->Arg(2)->Arg(12)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
