// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "sllb/noise.hpp"

static void BM_GeneratePath(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto path = sllb::generate_path(42, 7, 1.0 / 400, n);
    benchmark::DoNotOptimize(path.increments.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_GeneratePath)->Arg(80)->Arg(10000);

static void BM_Coarsen(benchmark::State& state) {
  auto path = sllb::generate_path(42, 7, 1.0 / 400, 4096);
  for (auto _ : state) {
    auto coarse = sllb::coarsen(path, 16);
    benchmark::DoNotOptimize(coarse.data());
  }
}
BENCHMARK(BM_Coarsen);

BENCHMARK_MAIN();
