#include <benchmark/benchmark.h>

#include "ldgs/ldg1d.hpp"
#include "ldgs/ldg2d.hpp"
#include "ldgs/linear_solver.hpp"
#include "ldgs/norms.hpp"

namespace {

using namespace ldgs;

constexpr double kEps = 1e-8;

void BM_Assemble1D(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  const Problem1D p = paper_1d_problem(kEps);
  const Mesh1D mesh = build_shishkin_1d({n, kEps, k + 1.0, 1.0});
  for (auto _ : state) benchmark::DoNotOptimize(assemble_1d(p, mesh, k));
}
BENCHMARK(BM_Assemble1D)->ArgsProduct({{128, 1024}, {1, 3}});

void BM_BandedSolve1D(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  const Problem1D p = paper_1d_problem(kEps);
  const AssembledSystem sys = assemble_1d(p, build_shishkin_1d({n, kEps, k + 1.0, 1.0}), k);
  for (auto _ : state) benchmark::DoNotOptimize(banded_solve(sys.matrix, sys.rhs));
}
BENCHMARK(BM_BandedSolve1D)->ArgsProduct({{128, 1024}, {1, 3}});

void BM_ErrorNorms1D(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Problem1D p = paper_1d_problem(kEps);
  const Mesh1D mesh = build_shishkin_1d({n, kEps, 2.0, 1.0});
  const MixedSolution1D w = solve_ldg_1d(p, mesh, 1);
  for (auto _ : state) benchmark::DoNotOptimize(error_norms_1d(w, p, mesh));
}
BENCHMARK(BM_ErrorNorms1D)->Arg(1024);

void BM_Solve2D(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto kind = static_cast<SolverKind>(state.range(1));
  const Problem2D p = manufactured_2d_problem(kEps);
  const Mesh2D mesh = build_shishkin_2d({n, kEps, 2.0, 1.0});
  SolverOptions opt;
  opt.kind = kind;
  for (auto _ : state) benchmark::DoNotOptimize(solve_ldg_2d(p, mesh, 1, opt));
}
BENCHMARK(BM_Solve2D)
    ->Args({16, static_cast<int>(SolverKind::banded)})
    ->Args({16, static_cast<int>(SolverKind::condensed)})
    ->Args({32, static_cast<int>(SolverKind::condensed)})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
