#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "ranslice/auction.hpp"
#include "ranslice/rng.hpp"

namespace {

using namespace ranslice;

std::vector<auction::TenantBid> random_bids(int n, std::uint64_t seed)
{
  Rng rng = make_stream(seed, 0);
  std::uniform_real_distribution<double> price(10.0, 20.0);
  std::uniform_int_distribution<int> quantity(1, 40);
  std::vector<auction::TenantBid> bids;
  for (int i = 0; i < n; ++i) {
    bids.push_back({static_cast<TenantId>(i), 0, price(rng), quantity(rng)});
  }
  return bids;
}

void BM_RunAuction(benchmark::State& state)
{
  const auto bids = random_bids(static_cast<int>(state.range(0)), 1);
  const auction::AuctionConfig config{273, 15.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(auction::run_auction(bids, config));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RunAuction)->RangeMultiplier(2)->Range(4, 64)->Complexity();

void BM_BruteForceOracle(benchmark::State& state)
{
  const auto bids = random_bids(static_cast<int>(state.range(0)), 2);
  const auction::AuctionConfig config{100, 15.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(auction::brute_force_optimal(bids, config));
  }
}
BENCHMARK(BM_BruteForceOracle)->DenseRange(6, 14, 4);

}  // namespace
