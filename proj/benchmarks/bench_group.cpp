#include <benchmark/benchmark.h>

#include "qd/fusion.hpp"

static void BM_GroupStructure(benchmark::State& state) {
  for (auto _ : state) {
    auto g = qd::FiniteGroup::named("d4");
    benchmark::DoNotOptimize(g.classes());
    benchmark::DoNotOptimize(g.irreps());
  }
}
BENCHMARK(BM_GroupStructure);

static void BM_GenericIrreps(benchmark::State& state) {
  auto d4 = qd::FiniteGroup::named("d4");
  std::vector<int> table(64);
  std::vector<std::string> names;
  for (int a = 0; a < 8; ++a) names.push_back(d4.name(a));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) table[a * 8 + b] = d4.op(a, b);
  for (auto _ : state) {
    auto bare = qd::FiniteGroup::from_table(names, table);
    benchmark::DoNotOptimize(qd::compute_irreps_generic(bare));
  }
}
BENCHMARK(BM_GenericIrreps);

static void BM_FusionTable(benchmark::State& state) {
  qd::QuantumDouble qdd(qd::FiniteGroup::named("d4"));
  for (auto _ : state) {
    qd::FusionTable ft(qdd);
    benchmark::DoNotOptimize(ft.n(10, 10, 0));
  }
}
BENCHMARK(BM_FusionTable);

BENCHMARK_MAIN();
