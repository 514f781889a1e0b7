#include <benchmark/benchmark.h>

#include <random>

#include "radialmp/exponents.hpp"
#include "radialmp/functional.hpp"
#include "radialmp/probes.hpp"
#include "radialmp/random_functions.hpp"
#include "radialmp/solver.hpp"
#include "radialmp/spaces.hpp"

using namespace radialmp;

namespace {

struct Example2 {
  PotentialSpec A = PotentialSpec::max_power({1, -2}, {1, -3});
  PotentialSpec V = PotentialSpec::pure_power(1, -4);
  PotentialSpec K = PotentialSpec::min_power({1, 0}, {1, -2});
};

void BM_ExponentReportExact(benchmark::State& state) {
  ProblemParams p;
  p.N = 6;
  p.a0 = Rational(-3);
  p.ainf = Rational(-2);
  p.alpha0 = 0;
  p.alphainf = Rational(-2);
  p.beta0 = 0;
  p.betainf = 0;
  for (auto _ : state) benchmark::DoNotOptimize(exponent_report(p));
}
BENCHMARK(BM_ExponentReportExact);

void BM_XFormRiesz(benchmark::State& state) {
  const Example2 e;
  const auto g = RadialGrid::build(6, 1e-6, 1e3, static_cast<int>(state.range(0)));
  const XForm X(g, e.A, e.V);
  std::vector<double> dual(g->size(), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(X.riesz(dual));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_XFormRiesz)->RangeMultiplier(4)->Range(500, 32000)->Complexity(benchmark::oN);

void BM_EnergyAndGradient(benchmark::State& state) {
  const Example2 e;
  const auto g = RadialGrid::build(6, 1e-6, 1e3, static_cast<int>(state.range(0)));
  const EnergyFunctional I(g, e.A, e.V, e.K, Nonlinearity::min_power(3, 5));
  std::mt19937_64 rng(1);
  const auto u = random_bumps(g, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(I.energy(u.values()));
    benchmark::DoNotOptimize(I.x_gradient(u.values()));
  }
}
BENCHMARK(BM_EnergyAndGradient)->Arg(2000)->Arg(8000);

void BM_SumNorm(benchmark::State& state) {
  const Example2 e;
  const auto g = RadialGrid::build(6, 1e-6, 1e3, 2000);
  std::mt19937_64 rng(2);
  const auto u = random_bumps(g, rng);
  for (auto _ : state) benchmark::DoNotOptimize(sum_norm(u, e.K, 3, 5));
}
BENCHMARK(BM_SumNorm);

void BM_SolvePurePower(benchmark::State& state) {
  const Example2 e;
  SolveConfig c;
  c.N = 6;
  c.grid.nodes = static_cast<int>(state.range(0));
  c.A = e.A;
  c.V = e.V;
  c.K = e.K;
  c.nl = Nonlinearity::pure_power(5);
  for (auto _ : state) benchmark::DoNotOptimize(solve(c));
}
BENCHMARK(BM_SolvePurePower)->Arg(2000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_ProbeS0(benchmark::State& state) {
  const Example2 e;
  const auto g = RadialGrid::build(6, 1e-6, 1e3, 2000);
  const XForm X(g, e.A, e.V);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_S0(X, e.K, 8.0, 1e-2));
}
BENCHMARK(BM_ProbeS0)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
