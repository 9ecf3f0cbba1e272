#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "ranslice/rl/dqn.hpp"
#include "ranslice/rl/replay_memory.hpp"

namespace {

using namespace ranslice;

rl::Experience random_experience(Rng& rng)
{
  std::uniform_real_distribution<double> u(0.0, 1.0);
  rl::Experience e;
  e.state = {u(rng), u(rng), u(rng)};
  e.next_state = {u(rng), u(rng), u(rng)};
  e.action = static_cast<int>(u(rng) * 4) % 4;
  e.reward = u(rng);
  e.discount = 0.97;
  return e;
}

void BM_Forward(benchmark::State& state)
{
  Rng rng = make_stream(1, 0);
  const rl::QNetwork net({3, 64, 64, 4}, rng);
  const std::vector<double> x{0.2, 0.5, 0.9};
  for (auto _ : state) {
    benchmark::DoNotOptimize(net.forward(x));
  }
}
BENCHMARK(BM_Forward);

void BM_TrainStep(benchmark::State& state)
{
  Rng rng = make_stream(2, 0);
  rl::QNetwork online({3, 64, 64, 4}, rng);
  const rl::QNetwork target = online;
  rl::Optimizer opt({rl::OptimizerKind::Adam, 1e-4}, online.parameter_count());
  std::vector<rl::Experience> batch;
  for (int i = 0; i < state.range(0); ++i) {
    batch.push_back(random_experience(rng));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(rl::train_step(online, target, opt, batch));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TrainStep)->Arg(32)->Arg(128);

void BM_ReplayAdd(benchmark::State& state)
{
  Rng rng = make_stream(3, 0);
  rl::ReplayMemory mem(50'000);
  const auto e = random_experience(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mem.add(e));
  }
}
BENCHMARK(BM_ReplayAdd);

void BM_ReplaySample(benchmark::State& state)
{
  Rng rng = make_stream(4, 0);
  rl::ReplayMemory mem(50'000);
  for (int i = 0; i < 50'000; ++i) {
    auto e = random_experience(rng);
    e.priority = 0.1 + e.reward;
    (void)mem.add(std::move(e));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(mem.sample(32, rng));
  }
}
BENCHMARK(BM_ReplaySample);

}  // namespace
