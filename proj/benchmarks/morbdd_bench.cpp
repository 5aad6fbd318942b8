// Microbenchmarks for the hot paths: compilation, frontier enumeration,
// dominance filtering and hypervolume.  Run with --benchmark_filter=... to
// narrow; sizes are chosen so a full pass stays under a few minutes.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "morbdd/bdd.hpp"
#include "morbdd/instance.hpp"
#include "morbdd/metrics.hpp"
#include "morbdd/pareto.hpp"
#include "morbdd/rng.hpp"

using namespace morbdd;

namespace {

std::vector<ObjectiveVector> random_vectors(int k, std::size_t count,
                                            std::uint64_t seed) {
  Rng rng(seed);
  std::vector<ObjectiveVector> out(count, ObjectiveVector(k, 0));
  for (ObjectiveVector& v : out)
    for (std::int32_t& c : v)
      c = static_cast<std::int32_t>(uniform_int(rng, 1, 10000));
  return out;
}

void BM_CompileExact(benchmark::State& state) {
  const Instance inst =
      generate_instance(3, static_cast<int>(state.range(0)), 11);
  for (auto _ : state) {
    const Bdd bdd = compile_exact(inst);
    benchmark::DoNotOptimize(bdd.node_count());
  }
}
BENCHMARK(BM_CompileExact)->Arg(20)->Arg(40)->Arg(80);

void BM_EnumerateFrontier(benchmark::State& state) {
  const Instance inst =
      generate_instance(static_cast<int>(state.range(0)),
                        static_cast<int>(state.range(1)), 11);
  const Bdd bdd = compile_exact(inst);
  for (auto _ : state) {
    const EnumerationResult res = enumerate_frontier(bdd);
    benchmark::DoNotOptimize(res.frontier.size());
  }
  state.counters["nodes"] = static_cast<double>(bdd.node_count());
}
BENCHMARK(BM_EnumerateFrontier)->Args({2, 30})->Args({3, 25})->Args({4, 20});

void BM_FilterNondominated(benchmark::State& state) {
  const auto vectors =
      random_vectors(3, static_cast<std::size_t>(state.range(0)), 17);
  for (auto _ : state) {
    const FilterResult res = filter_nondominated(vectors);
    benchmark::DoNotOptimize(res.nondominated.size());
  }
}
BENCHMARK(BM_FilterNondominated)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_HypervolumeExact(benchmark::State& state) {
  const auto pts = filter_nondominated(random_vectors(
                       static_cast<int>(state.range(0)), 2000, 23))
                       .nondominated;
  const ObjectiveVector reference(static_cast<std::size_t>(state.range(0)), 0);
  for (auto _ : state)
    benchmark::DoNotOptimize(hypervolume_exact(pts, reference));
  state.counters["points"] = static_cast<double>(pts.size());
}
BENCHMARK(BM_HypervolumeExact)->Arg(2)->Arg(3);

void BM_HypervolumeMc(benchmark::State& state) {
  const auto pts = filter_nondominated(random_vectors(4, 2000, 23)).nondominated;
  const ObjectiveVector reference(4, 0);
  std::uint64_t seed = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        hypervolume_mc(pts, reference, 0.05, 0.05, seed++));
  state.counters["points"] = static_cast<double>(pts.size());
}
BENCHMARK(BM_HypervolumeMc);

}  // namespace

BENCHMARK_MAIN();
