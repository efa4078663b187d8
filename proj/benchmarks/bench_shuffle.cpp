#include <benchmark/benchmark.h>

#include <numeric>
#include <vector>

#include "permpfa/romgen.hpp"
#include "permpfa/sampler.hpp"
#include "permpfa/stats.hpp"

using namespace permpfa;

namespace {

void shuffle_loop(benchmark::State& state, Engine kind) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ShuffleEngine engine(kind, n);
  RngStream rng(1);
  std::vector<Index> items(n);
  std::iota(items.begin(), items.end(), Index{0});
  std::size_t rounds = 0;
  for (auto _ : state) {
    rounds += engine.shuffle(std::span<Index>(items), rng).rounds;
    benchmark::DoNotOptimize(items.data());
  }
  state.counters["rounds"] =
      benchmark::Counter(static_cast<double>(rounds), benchmark::Counter::kAvgIterations);
  state.SetItemsProcessed(state.iterations());
}

void BM_Dpfa(benchmark::State& s) { shuffle_loop(s, Engine::kDpfa); }
void BM_Datapath(benchmark::State& s) { shuffle_loop(s, Engine::kDatapath); }
void BM_FisherYatesDesc(benchmark::State& s) { shuffle_loop(s, Engine::kFisherYatesDesc); }
void BM_FisherYatesAsc(benchmark::State& s) { shuffle_loop(s, Engine::kFisherYatesAsc); }

void BM_BuildRom(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_rom(n));
}

}  // namespace

BENCHMARK(BM_Dpfa)->Arg(8)->Arg(20)->Arg(32)->Arg(100);
BENCHMARK(BM_Datapath)->Arg(8)->Arg(20)->Arg(32)->Arg(100);
BENCHMARK(BM_FisherYatesDesc)->Arg(8)->Arg(20)->Arg(32)->Arg(100);
BENCHMARK(BM_FisherYatesAsc)->Arg(8)->Arg(20)->Arg(32)->Arg(100);
BENCHMARK(BM_BuildRom)->Arg(8)->Arg(20)->Arg(32);
BENCHMARK_MAIN();
