// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <random>

#include "sllb/fem.hpp"

using namespace sllb;

namespace {

FeField random_field(const MeshPtr& mesh, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  FeField f(mesh);
  for (int i = 0; i < f.values().size(); ++i) f.values()[i] = dist(gen);
  return f;
}

MeshPtr mesh_for(const benchmark::State& state) {
  return state.range(0) > 0 ? Mesh::interval(static_cast<int>(state.range(0)))
                            : Mesh::unit_square(static_cast<int>(-state.range(0)));
}

} // namespace

static void BM_AssembleMass(benchmark::State& state) {
  auto mesh = mesh_for(state);
  for (auto _ : state) {
    SparseMat m = assemble_mass(*mesh);
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(BM_AssembleMass)->Arg(64)->Arg(-32)->Arg(-64);

static void BM_AssembleCubicWeight(benchmark::State& state) {
  auto mesh = mesh_for(state);
  FeField w = random_field(mesh, 1);
  for (auto _ : state) {
    SparseMat a = assemble_cubic_weight(*mesh, w);
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_AssembleCubicWeight)->Arg(64)->Arg(-32)->Arg(-64);

static void BM_AssembleCrossConvection(benchmark::State& state) {
  auto mesh = mesh_for(state);
  FeField w = random_field(mesh, 2);
  for (auto _ : state) {
    SparseMat c = assemble_cross_convection(*mesh, w);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_AssembleCrossConvection)->Arg(64)->Arg(-32)->Arg(-64);

static void BM_Norms(benchmark::State& state) {
  auto mesh = mesh_for(state);
  FemOperators ops(mesh);
  FeField v = random_field(mesh, 3);
  for (auto _ : state) {
    Norms n = ops.norms(v);
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_Norms)->Arg(64)->Arg(-64);

static void BM_L2Project(benchmark::State& state) {
  auto mesh = mesh_for(state);
  FemOperators ops(mesh);
  const auto f = [](const Eigen::Vector2d& p) {
    return Eigen::Vector3d(p.x(), p.y(), p.x() * p.y());
  };
  for (auto _ : state) {
    FeField proj = ops.l2_project(f);
    benchmark::DoNotOptimize(proj);
  }
}
BENCHMARK(BM_L2Project)->Arg(64)->Arg(-64);
