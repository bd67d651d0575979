#include <benchmark/benchmark.h>

#include <memory>

#include "evolab/adversaries.hpp"
#include "evolab/catalog.hpp"
#include "evolab/dimensions.hpp"
#include "evolab/game.hpp"
#include "evolab/learners.hpp"
#include "evolab/oracle.hpp"
#include "evolab/rng.hpp"

namespace {

using namespace evolab;

Stream random_stream(const EnumeratedFamily& fam, int T, std::uint64_t seed) {
  Rng rng(seed);
  Stream s;
  for (int t = 0; t <= T; ++t)
    s.push_back(static_cast<State>(
        rng.uniform_int(0, static_cast<long long>(fam.state_count()) - 1)));
  return s;
}

void BM_EvolutionComplexity(benchmark::State& state) {
  EnumeratedFamily fam = bool_mod2(2);
  for (auto _ : state) {
    DimensionEngine engine(fam);
    benchmark::DoNotOptimize(engine.complexity(static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_EvolutionComplexity)->Arg(4)->Arg(6)->Arg(8);

void BM_BruteForceOracle(benchmark::State& state) {
  EnumeratedFamily fam = bool_mod2(2);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        brute_force_max_branching(fam, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_BruteForceOracle)->Arg(2)->Arg(3);

void BM_LittlestoneDimension(benchmark::State& state) {
  EnumeratedFamily fam = thresholds_grid(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    DimensionEngine engine(fam);
    benchmark::DoNotOptimize(engine.littlestone_dimension());
  }
}
BENCHMARK(BM_LittlestoneDimension)->Arg(8)->Arg(16);

void BM_EwMarkovianGame(benchmark::State& state) {
  EnumeratedFamily fam = bool_mod2(2);
  GameContext<State> ctx = enumerated_context(fam);
  const int T = static_cast<int>(state.range(0));
  Stream stream = random_stream(fam, T, 7);
  for (auto _ : state) {
    EwMarkovianSession learner(fam);
    FixedStreamAdversary<State> adversary(stream);
    benchmark::DoNotOptimize(run_game<State>(learner, adversary, T, 1, 2, ctx));
  }
}
BENCHMARK(BM_EwMarkovianGame)->Arg(64)->Arg(256);

void BM_FlowComparator(benchmark::State& state) {
  EnumeratedFamily fam = bool_mod2(2);
  Stream stream = random_stream(fam, 12, 11);
  for (auto _ : state) benchmark::DoNotOptimize(fam.flow_comparator(stream));
}
BENCHMARK(BM_FlowComparator);

void BM_FlowExpertPool(benchmark::State& state) {
  EnumeratedFamily fam = bool_mod2(2);
  auto engine = std::make_shared<DimensionEngine>(fam);
  for (auto _ : state) {
    FlowExpertsOracle oracle(engine, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(oracle.expert_count());
  }
}
BENCHMARK(BM_FlowExpertPool)->Arg(6)->Arg(12);

void BM_FlowExpertsGame(benchmark::State& state) {
  EnumeratedFamily fam = bool_mod2(2);
  GameContext<State> ctx = enumerated_context(fam);
  auto engine = std::make_shared<DimensionEngine>(fam);
  const int T = 12;
  auto oracle = std::make_shared<FlowExpertsOracle>(engine, T);
  Stream stream = random_stream(fam, T, 13);
  for (auto _ : state) {
    FlowExpertsSession learner(oracle);
    FixedStreamAdversary<State> adversary(stream);
    benchmark::DoNotOptimize(run_game<State>(learner, adversary, T, 1, 2, ctx));
  }
}
BENCHMARK(BM_FlowExpertsGame);

}  // namespace

BENCHMARK_MAIN();
