// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "sllb/linsolve.hpp"
#include "sllb/schemes.hpp"
#include "sllb/simulations.hpp"

using namespace sllb;

static void BM_SemiImplicitStep1D(benchmark::State& state) {
  auto sim = simulation1();
  auto mesh = Mesh::interval(static_cast<int>(state.range(0)));
  FemOperators ops(mesh);
  FeField u = ops.l2_project(sim.initial_data);
  FeField g = ops.l2_project(sim.noise_coefficient);
  auto params = sim.make_params(0.01, 1.0, SchemeKind::semi_implicit);
  for (auto _ : state) {
    auto [next, report] = semi_implicit_step(u, g, 0.01, params, ops);
    benchmark::DoNotOptimize(next);
  }
}
BENCHMARK(BM_SemiImplicitStep1D)->Arg(32)->Arg(64);

static void BM_SemiImplicitStep2D(benchmark::State& state) {
  auto sim = simulation2();
  auto mesh = Mesh::unit_square(static_cast<int>(state.range(0)));
  FemOperators ops(mesh);
  FeField u = ops.l2_project(sim.initial_data);
  FeField g = ops.l2_project(sim.noise_coefficient);
  auto params = sim.make_params(1.0 / 400, 1.0, SchemeKind::semi_implicit);
  BlockSystemSolver solver;
  for (auto _ : state) {
    auto [next, report] = semi_implicit_step(u, g, 0.01, params, ops, &solver);
    benchmark::DoNotOptimize(next);
  }
}
BENCHMARK(BM_SemiImplicitStep2D)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_ImplicitStep1D(benchmark::State& state) {
  auto sim = simulation1();
  auto mesh = Mesh::interval(static_cast<int>(state.range(0)));
  FemOperators ops(mesh);
  FeField u = ops.l2_project(sim.initial_data);
  FeField g = ops.l2_project(sim.noise_coefficient);
  auto params = sim.make_params(1.0 / 400, 1.0, SchemeKind::implicit);
  for (auto _ : state) {
    auto [next, report] = implicit_step(u, g, 0.01, params, ops);
    benchmark::DoNotOptimize(next);
  }
}
BENCHMARK(BM_ImplicitStep1D)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
