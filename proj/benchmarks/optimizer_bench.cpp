#include <benchmark/benchmark.h>

#include "jcover/optimizer.hpp"

namespace {

using namespace jcover;

void BM_BallEnumeration(benchmark::State& state) {
  const Params p = Params::standard();
  for (auto _ : state) {
    Count sum = 0;
    for_each_in_ball(p, Block{0x3f}, [&](Mask s) { sum += rank_of(s); });
    benchmark::DoNotOptimize(sum);
  }
  state.SetItemsProcessed(state.iterations() * 517870);
}
BENCHMARK(BM_BallEnumeration)->Unit(benchmark::kMillisecond);

void BM_LedgerAddRemove(benchmark::State& state) {
  const Params p = Params::make(40, 6, 3);
  CoverageLedger ledger(p);
  const Block b{0x3f0};
  for (auto _ : state) {
    ledger.add(b);
    ledger.remove(b);
  }
}
BENCHMARK(BM_LedgerAddRemove)->Unit(benchmark::kMillisecond);

void BM_GreedySmall(benchmark::State& state) {
  const Params p = Params::make(static_cast<int>(state.range(0)), 6, 3);
  std::vector<Block> all;
  for (Block b : enumerate_k_subsets(p)) all.push_back(b);
  const Family pool(p, all, "all");
  for (auto _ : state) benchmark::DoNotOptimize(greedy_cover(p, pool).size());
}
BENCHMARK(BM_GreedySmall)->Arg(14)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace
