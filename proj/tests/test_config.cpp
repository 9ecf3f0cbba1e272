#include <gtest/gtest.h>

#include <vector>

#include "ranslice/sim/config.hpp"

namespace ranslice::sim {
namespace {

TEST(Config, DefaultConstants)
{
  const auto c = default_config();
  EXPECT_EQ(c.auction.total_rbs, 273);
  EXPECT_EQ(c.auction.vodus, 3);
  EXPECT_EQ(c.auction.total_rbs / c.auction.vodus, 91);
  EXPECT_EQ(c.orus.size(), 6u);
  EXPECT_DOUBLE_EQ(c.rl.learning_rate, 1e-4);
  EXPECT_DOUBLE_EQ(c.rl.gamma, 0.99);
  EXPECT_EQ(c.rl.replay_capacity, 50'000u);
  EXPECT_EQ(c.rl.layers, (std::vector<int>{3, 64, 64, 4}));
  EXPECT_DOUBLE_EQ(c.rewards.phi_dis, 0.0018);
  EXPECT_DOUBLE_EQ(c.auction.reserve_price, 15.0);
}

TEST(Config, DefaultScenario)
{
  const auto c = default_config();
  EXPECT_NO_THROW(validate(c));
  EXPECT_EQ(c.fleet.flying, 3);
  EXPECT_GE(c.fleet.ground, 9);
  EXPECT_EQ(c.auction.tenants, 10);
  EXPECT_EQ(c.services.size(), 7u);
  EXPECT_EQ(c.run.steps, 10'000u);
  EXPECT_EQ(c.run.loop2_period, 20);
  EXPECT_DOUBLE_EQ(c.buffer_capacity, 200.0);
  EXPECT_DOUBLE_EQ(c.buffer_threshold, 150.0);
  const auto full = full_profile(c);
  EXPECT_EQ(full.fleet.ground, 35);
  EXPECT_EQ(full.run.steps, 100'000u);
}

TEST(Config, YamlRoundTrip)
{
  auto c = default_config();
  c.run.seed = 77;
  c.fleet.ground = 20;
  c.rewards.mode = loops::RewardMode::Literal;
  c.rl.shared_network = true;
  const auto back = parse_config(config_to_yaml(c));
  EXPECT_EQ(config_to_yaml(back), config_to_yaml(c));
  EXPECT_EQ(back.run.seed, 77u);
  EXPECT_EQ(back.rewards.mode, loops::RewardMode::Literal);
}

TEST(Config, PartialYamlKeepsDefaults)
{
  const auto c = parse_config("run:\n  seed: 5\n  steps: 200\n");
  EXPECT_EQ(c.run.seed, 5u);
  EXPECT_EQ(c.run.steps, 200u);
  EXPECT_EQ(c.auction.total_rbs, 273);
}

TEST(Config, ErrorsCarryLines)
{
  try {
    (void)parse_config("run:\n  seed: 5\n  stepz: 10\n");
    FAIL() << "unknown key accepted";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  try {
    (void)parse_config("auction:\n  total_rbs: -4\n");
    FAIL() << "negative RB pool accepted";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 2);
  }
  EXPECT_THROW((void)parse_config("run: [1, 2"), ConfigError);
  EXPECT_THROW((void)parse_config("schema_version: 9\n"), ConfigError);
  EXPECT_THROW((void)load_config("/nonexistent/config.yaml"), ConfigError);
}

TEST(Config, ValidationRejectsBrokenScenarios)
{
  auto c = default_config();
  c.buffer_threshold = c.buffer_capacity;
  EXPECT_THROW(validate(c), ConfigError);
  c = default_config();
  c.rl.layers = {4, 64, 4};
  EXPECT_THROW(validate(c), ConfigError);
  c = default_config();
  c.rl.layers = {3, 64, 3};
  EXPECT_THROW(validate(c), ConfigError);
  c = default_config();
  c.orus.clear();
  EXPECT_THROW(validate(c), ConfigError);
  c = default_config();
  c.rl.updates_per_tick = 0;
  EXPECT_THROW(validate(c), ConfigError);
  c = default_config();
  c.fleet.flying_height_max = 400.0;
  EXPECT_THROW(validate(c), ConfigError);
}

}  // namespace
}  // namespace ranslice::sim
