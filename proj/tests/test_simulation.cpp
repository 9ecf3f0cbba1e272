#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "ranslice/sim/compare.hpp"
#include "ranslice/sim/outputs.hpp"
#include "ranslice/sim/simulation.hpp"

namespace ranslice::sim {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p)
{
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name)
{
  const auto dir = fs::temp_directory_path() / ("ranslice_test_" + name);
  fs::remove_all(dir);
  return dir;
}

ScenarioConfig short_config(std::uint64_t steps)
{
  auto c = default_config();
  c.run.steps = steps;
  return c;
}

TEST(Simulation, ZeroStepsReportsSetupOnly)
{
  const auto r = run(short_config(0));
  EXPECT_EQ(r.steps, 0u);
  EXPECT_TRUE(r.step_reward.empty());
  EXPECT_EQ(r.train_steps, 0u);
  EXPECT_GT(r.auction_winners, 0u);
  EXPECT_EQ(r.allocated_rbs + r.unallocated_rbs, 273);
}

TEST(Simulation, ShortRunInvariants)
{
  const auto r = run(short_config(400));
  EXPECT_EQ(r.step_reward.size(), 400u);
  EXPECT_EQ(r.orthogonality_violations, 0u);
  EXPECT_EQ(r.placement_violations, 0u);
  EXPECT_EQ(r.conservation_failures, 0u);
  EXPECT_EQ(r.loop2_steps, 20u);
  EXPECT_GT(r.train_steps, 0u);
  EXPECT_FALSE(r.diverged);
  for (const double x : r.step_reward) {
    EXPECT_TRUE(std::isfinite(x));
  }
  for (const auto* name : {events::kLoop1CapacityClamp, events::kCouplingExcess, events::kFronthaulOverload,
                           events::kOrthogonality, events::kDuplicatePlacement, events::kBudgetOverflow,
                           events::kScalingOverrun}) {
    EXPECT_TRUE(r.events.contains(name)) << name;
  }
  EXPECT_EQ(r.events.at(events::kOrthogonality), 0u);
  EXPECT_EQ(r.events.at(events::kDuplicatePlacement), 0u);
}

TEST(Simulation, RandomBaselineSameSchema)
{
  const auto dir = scratch("baseline");
  RunOptions opts;
  opts.output_dir = dir;
  const auto r = baseline_random(short_config(200), opts);
  EXPECT_TRUE(r.random_policy);
  EXPECT_EQ(r.train_steps, 0u);
  EXPECT_TRUE(std::isfinite(r.final_window_reward));
  const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
  EXPECT_EQ(summary.at("policy"), "random");
  EXPECT_EQ(summary.at("schema_version"), kMetricsSchemaVersion);
  fs::remove_all(dir);
}

TEST(Simulation, WritesArtefacts)
{
  const auto dir = scratch("artefacts");
  auto c = short_config(60);
  c.run.write_assignments = true;
  RunOptions opts;
  opts.output_dir = dir;
  const auto r = run(c, opts);
  for (const auto* f : {"config.yaml", "auction.json", "placement.json", "metrics.csv", "training.csv",
                        "events.log", "summary.json", "assignments.csv"}) {
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  }
  const auto metrics = slurp(dir / "metrics.csv");
  EXPECT_EQ(metrics.rfind("t,vodu,slice,action,", 0), 0u);
  const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
  EXPECT_EQ(summary.at("steps"), 60);
  EXPECT_EQ(summary.at("slices").size(), r.slices.size());
  EXPECT_EQ(parse_config(slurp(dir / "config.yaml")).run.steps, 60u);
  fs::remove_all(dir);
}

TEST(Simulation, DeterministicRunsAreByteIdentical)
{
  const auto a = scratch("det_a");
  const auto b = scratch("det_b");
  const auto c = short_config(300);
  RunOptions oa;
  oa.output_dir = a;
  RunOptions ob;
  ob.output_dir = b;
  (void)run(c, oa);
  (void)run(c, ob);
  EXPECT_EQ(slurp(a / "metrics.csv"), slurp(b / "metrics.csv"));
  EXPECT_EQ(slurp(a / "training.csv"), slurp(b / "training.csv"));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Simulation, ConcurrentActorsRun)
{
  auto c = short_config(300);
  c.run.actors = 3;
  c.run.deterministic = false;
  const auto r = run(c);
  EXPECT_EQ(r.step_reward.size(), 300u);
  EXPECT_EQ(r.orthogonality_violations, 0u);
  EXPECT_EQ(r.conservation_failures, 0u);
  EXPECT_GT(r.train_steps, 0u);
}

TEST(Simulation, SharedNetworkRuns)
{
  auto c = short_config(200);
  c.rl.shared_network = true;
  const auto r = run(c);
  EXPECT_GT(r.train_steps, 0u);
  EXPECT_FALSE(r.diverged);
}

TEST(Compare, GreedyEqualsOracle)
{
  const auto inst = auction::load_instance(RANSLICE_SOURCE_DIR "/data/auction_example.json");
  const auto c = compare_auction(inst);
  EXPECT_TRUE(c.same_decisions);
  EXPECT_DOUBLE_EQ(c.greedy_fraction, c.oracle_fraction);
  EXPECT_DOUBLE_EQ(c.greedy_fraction, 0.9);
  EXPECT_DOUBLE_EQ(c.greedy_revenue, 96.0);
}

TEST(Compare, KnapsackGap)
{
  // Greedy takes the 20/RB bid of 6 RBs and cannot fit either 5-RB bid; the oracle takes both.
  auction::AuctionInstance inst;
  inst.config = {10, 15.0};
  inst.bids = {{1, 0, 20.0, 6}, {2, 0, 19.0, 5}, {3, 0, 18.0, 5}};
  const auto c = compare_auction(inst);
  EXPECT_FALSE(c.same_decisions);
  EXPECT_GE(c.oracle_fraction, c.greedy_fraction);
  EXPECT_DOUBLE_EQ(c.oracle_fraction, 1.0);
  EXPECT_DOUBLE_EQ(c.greedy_fraction, 0.6);
  EXPECT_GT(c.oracle_welfare, c.greedy_welfare);
}

TEST(Compare, EmptyInstance)
{
  auction::AuctionInstance inst;
  inst.config = {0, 15.0};
  const auto c = compare_auction(inst);
  EXPECT_DOUBLE_EQ(c.greedy_fraction, 0.0);
  EXPECT_DOUBLE_EQ(c.oracle_fraction, 0.0);
  const auto j = nlohmann::json::parse(comparison_to_json(c));
  EXPECT_EQ(j.at("total_rbs"), 0);
  EXPECT_FALSE(comparison_to_table(c).empty());
}

}  // namespace
}  // namespace ranslice::sim
