#include <benchmark/benchmark.h>

#include "pberg/distance.hpp"
#include "pberg/verify.hpp"

using namespace pberg;

namespace {

struct DiskFixture {
  Domain domain = Domain::disk();
  QuadratureRule rule;
  std::shared_ptr<const Basis> basis;
  DiskFixture(int radial, int angular, int degree) {
    rule = build_quadrature(domain, radial, angular);
    basis = Basis::disk(rule, degree);
  }
};

const DiskFixture& fixture() {
  static DiskFixture f(64, 128, 24);
  return f;
}

}  // namespace

static void BM_BuildQuadrature(benchmark::State& state) {
  for (auto _ : state) {
    auto rule = build_quadrature(Domain::disk(), 64, 128);
    benchmark::DoNotOptimize(rule.weights.sum());
  }
}
BENCHMARK(BM_BuildQuadrature);

static void BM_BasisTable(benchmark::State& state) {
  const auto rule = build_quadrature(Domain::disk(), 64, 128);
  for (auto _ : state) {
    auto basis = Basis::disk(rule, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(basis->size());
  }
}
BENCHMARK(BM_BasisTable)->Arg(12)->Arg(24)->Arg(32);

static void BM_SolveMinimizer(benchmark::State& state) {
  const auto& f = fixture();
  const double p = state.range(0) / 10.0;
  for (auto _ : state) {
    auto sol = solve_minimizer(f.domain, f.basis, f.rule, p, point1(Complex(0.5)));
    benchmark::DoNotOptimize(sol.m_value);
  }
}
BENCHMARK(BM_SolveMinimizer)->Arg(20)->Arg(30)->Arg(40)->Arg(15)
    ->Unit(benchmark::kMillisecond);

static void BM_SkwDistance(benchmark::State& state) {
  const auto& f = fixture();
  const double p = state.range(0) / 10.0;
  for (auto _ : state) {
    auto r = skw_distance(f.domain, f.basis, f.rule, p, point1(Complex(0.0)),
                          point1(Complex(0.4)));
    benchmark::DoNotOptimize(r.rho);
  }
}
BENCHMARK(BM_SkwDistance)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);

static void BM_PhaseSearch(benchmark::State& state) {
  const auto& f = fixture();
  const double p = state.range(0) / 10.0;
  const auto u = normalized_minimizer_values(f.domain, f.basis, f.rule, p,
                                             point1(Complex(0.0))).first;
  const auto v = normalized_minimizer_values(f.domain, f.basis, f.rule, p,
                                             point1(Complex(0.4))).first;
  for (auto _ : state) {
    auto pm = projective_distance_values(u, v, f.rule, p);
    benchmark::DoNotOptimize(pm.distance);
  }
}
BENCHMARK(BM_PhaseSearch)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);

static void BM_AppendixConstants(benchmark::State& state) {
  for (auto _ : state) {
    auto c = appendix_constants(4.0);
    benchmark::DoNotOptimize(c.c_p);
  }
}
BENCHMARK(BM_AppendixConstants);

static void BM_TaylorCheck(benchmark::State& state) {
  const Complex a(0.8, -0.3), b(-0.5, 0.6);
  for (auto _ : state) {
    auto reps = check_taylor_inequalities(a, b, state.range(0) / 10.0);
    benchmark::DoNotOptimize(reps.size());
  }
}
BENCHMARK(BM_TaylorCheck)->Arg(15)->Arg(47);

BENCHMARK_MAIN();
