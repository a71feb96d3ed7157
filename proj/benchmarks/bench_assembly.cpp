#include <benchmark/benchmark.h>

#include "maxwell/analysis.hpp"
#include "maxwell/assembly.hpp"
#include "maxwell/linsolve.hpp"

namespace {

using namespace maxwell;

AssemblyOptions options_for(const Mesh& mesh, int p, double kappa, int threads) {
  AssemblyOptions o;
  o.quadrature = QuadraturePolicy::standard(p, kappa, mesh.h());
  o.threads = threads;
  return o;
}

// args: p, M, threads
void BM_Assemble(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const auto mesh = Mesh::build_cube(static_cast<int>(state.range(1)));
  const FeSpace space(mesh, p);
  const auto exact = bessel_solution({5.0, 1.0});
  const auto opts = options_for(mesh, p, 5.0, static_cast<int>(state.range(2)));
  for (auto _ : state) {
    auto sys = assemble(space, exact, opts);
    benchmark::DoNotOptimize(sys.A.values.data());
  }
  state.counters["dofs"] = space.total_dofs();
}
BENCHMARK(BM_Assemble)->Args({1, 8, 1})->Args({2, 6, 1})->Args({3, 4, 1})->Args({2, 6, 0})
    ->Unit(benchmark::kMillisecond);

// args: p, M, solver (0 LU, 1 GMRES)
void BM_Solve(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const auto mesh = Mesh::build_cube(static_cast<int>(state.range(1)));
  const FeSpace space(mesh, p);
  const auto sys = assemble(space, bessel_solution({5.0, 1.0}), options_for(mesh, p, 5.0, 0));
  SolverOptions opts;
  opts.kind = state.range(2) == 0 ? SolverKind::Lu : SolverKind::Gmres;
  for (auto _ : state) {
    auto report = solve(sys.A, sys.b, opts);
    benchmark::DoNotOptimize(report.x.data());
  }
  state.counters["dofs"] = space.total_dofs();
}
BENCHMARK(BM_Solve)->Args({1, 8, 0})->Args({1, 8, 1})->Args({2, 6, 0})->Args({3, 4, 0})
    ->Unit(benchmark::kMillisecond);

void BM_ErrorNorms(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const auto mesh = Mesh::build_cube(static_cast<int>(state.range(1)));
  const FeSpace space(mesh, p);
  const auto exact = bessel_solution({5.0, 1.0});
  const int q = QuadraturePolicy::standard(p, 5.0, mesh.h()).load_degree;
  const auto u = interpolate(exact, space, q);
  for (auto _ : state) {
    auto err = error_norms(space, u.values, exact, q);
    benchmark::DoNotOptimize(err.rel.energy);
  }
}
BENCHMARK(BM_ErrorNorms)->Args({1, 8})->Args({3, 4})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
