#include <random>

#include <benchmark/benchmark.h>

#include "irqn/feasible_set.hpp"
#include "irqn/linvi.hpp"
#include "irqn/problems.hpp"
#include "irqn/solvers.hpp"

namespace {

irqn::VIProblem build(const std::string& name, irqn::Index n = 0) {
  irqn::ProblemSpec spec;
  spec.name = name;
  spec.n = n;
  return irqn::build_problem(spec);
}

irqn::Vector noise(std::mt19937_64& gen, irqn::Index n, double scale) {
  std::normal_distribution<double> N(0.0, scale);
  return irqn::Vector::NullaryExpr(n, [&] { return N(gen); });
}

void BM_ProjectBox(benchmark::State& state) {
  const auto n = state.range(0);
  const auto set = irqn::FeasibleSet::box(irqn::Vector::Zero(n), irqn::Vector::Ones(n));
  std::mt19937_64 gen(1);
  const irqn::Vector x = noise(gen, n, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(irqn::project(set, x));
}
BENCHMARK(BM_ProjectBox)->Arg(100)->Arg(5000);

// Cold projections onto a random polyhedron with m = n rows.
void BM_ProjectPolyhedronCold(benchmark::State& state) {
  const auto n = state.range(0);
  const auto d = irqn::ex6_random_data(1, n);
  const auto set = irqn::FeasibleSet::polyhedron(d.Q, d.b);
  std::mt19937_64 gen(2);
  const irqn::Vector x = noise(gen, n, 10.0);
  for (auto _ : state) benchmark::DoNotOptimize(irqn::project(set, x));
}
BENCHMARK(BM_ProjectPolyhedronCold)->Arg(5)->Arg(50)->Arg(200);

// A drifting point with the per-solve warm-start cache.
void BM_ProjectPolyhedronWarm(benchmark::State& state) {
  const auto n = state.range(0);
  const auto d = irqn::ex6_random_data(1, n);
  const auto set = irqn::FeasibleSet::polyhedron(d.Q, d.b);
  irqn::Projector project(set);
  std::mt19937_64 gen(3);
  irqn::Vector x = noise(gen, n, 10.0);
  for (auto _ : state) {
    x += noise(gen, n, 0.01);
    benchmark::DoNotOptimize(project(x));
  }
}
BENCHMARK(BM_ProjectPolyhedronWarm)->Arg(50)->Arg(200);

void BM_LinviBox(benchmark::State& state) {
  const auto n = state.range(0);
  const auto p = build("ex5", n);
  const irqn::Vector x = irqn::Vector::Constant(n, 0.5);
  const irqn::LinViSpec spec{p.jacobian(x) + 0.01 * irqn::Matrix::Identity(n, n), p.F(x), x};
  irqn::Projector project(p.set);
  for (auto _ : state) {
    benchmark::DoNotOptimize(irqn::solve_linvi(spec, project, x, {1e-8, 0.01, 1e-10, 10000}));
  }
}
BENCHMARK(BM_LinviBox)->Arg(20)->Arg(100);

void BM_IrqnSolve(benchmark::State& state, const char* name, irqn::Index n) {
  const auto p = build(name, n);
  const irqn::Vector x0 = p.initial_points.front().x;
  int iterations = 0;
  for (auto _ : state) {
    const auto r = irqn::irqn_solve(p, x0, irqn::SolverConfig{});
    iterations = r.iterations;
    benchmark::DoNotOptimize(r.final_res);
  }
  state.counters["iter"] = iterations;
}
BENCHMARK_CAPTURE(BM_IrqnSolve, ex1, "ex1", 100);
BENCHMARK_CAPTURE(BM_IrqnSolve, ex3, "ex3", 100);
BENCHMARK_CAPTURE(BM_IrqnSolve, ex7, "ex7", 0);
BENCHMARK_CAPTURE(BM_IrqnSolve, ex10, "ex10", 0);

void BM_InmSolve(benchmark::State& state) {
  const auto p = build("ex1", 100);
  for (auto _ : state) {
    benchmark::DoNotOptimize(irqn::inm_solve(p, p.initial_points.front().x, irqn::SolverConfig{}).final_res);
  }
}
BENCHMARK(BM_InmSolve);

}  // namespace

BENCHMARK_MAIN();
