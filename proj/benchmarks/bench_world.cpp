#include <benchmark/benchmark.h>

#include <vector>

#include "ranslice/sim/simulation.hpp"
#include "ranslice/sim/world.hpp"

namespace {

using namespace ranslice;

void BM_WorldTick(benchmark::State& state)
{
  const auto config = sim::default_config();
  sim::World world(config, 1);
  std::vector<std::vector<loops::LoopAction>> actions;
  for (std::size_t d = 0; d < world.vodu_count(); ++d) {
    actions.emplace_back(world.registry().slices_on(static_cast<VoduId>(d)).size(), loops::LoopAction::Keep);
  }
  for (auto _ : state) {
    for (std::size_t d = 0; d < world.vodu_count(); ++d) {
      auto tick = world.run_vodu(static_cast<VoduId>(d), actions[d]);
      world.score(tick);
      benchmark::DoNotOptimize(tick);
    }
    world.advance();
  }
}
BENCHMARK(BM_WorldTick);

void BM_TrainingRun(benchmark::State& state)
{
  auto config = sim::default_config();
  config.run.steps = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sim::run(config));
  }
}
BENCHMARK(BM_TrainingRun)->Arg(500)->Unit(benchmark::kMillisecond);

}  // namespace
