#include <benchmark/benchmark.h>

#include "forge/groupoid.hpp"
#include "forge/limits.hpp"

namespace {

using namespace forge;

// A codiscrete groupoid on n objects: the densest compose table we build.
Gpd codiscrete(int n) {
  GroupoidBuilder b;
  for (int i = 0; i < n; ++i) b.add_object();
  std::vector<std::vector<int>> arrow(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) arrow[i][j] = b.add_arrow(i, j);
  for (int i = 0; i < n; ++i) b.set_identity(i, arrow[i][i]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b.set_inverse(arrow[i][j], arrow[j][i]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        b.set_compose(arrow[j][k], arrow[i][j], arrow[i][k]);
  return b.build();
}

void BM_compose_lookup(benchmark::State& state) {
  auto g = codiscrete(static_cast<int>(state.range(0)));
  int n = g->n_arrows();
  int acc = 0;
  for (auto _ : state) {
    for (int a = 0; a < n; ++a) {
      auto c = g->try_compose(a, g->inverse(a));
      if (c) acc += *c;
    }
  }
  benchmark::DoNotOptimize(acc);
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_compose_lookup)->Arg(4)->Arg(6);

void BM_validate(benchmark::State& state) {
  auto g = codiscrete(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto report = g->validate();
    benchmark::DoNotOptimize(report.ok());
  }
}
BENCHMARK(BM_validate)->Arg(4)->Arg(6);

void BM_product(benchmark::State& state) {
  auto g = codiscrete(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto pb = product(g, g);
    benchmark::DoNotOptimize(pb.total()->n_arrows());
  }
}
BENCHMARK(BM_product)->Arg(3)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
