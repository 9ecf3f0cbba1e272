#include <gtest/gtest.h>

#include <set>
#include <stdexcept>
#include <vector>

#include "generators.hpp"
#include "ranslice/slicing.hpp"

namespace ranslice::slicing {
namespace {

std::vector<Slice> slices_with(const std::vector<RbCount>& budgets)
{
  std::vector<Slice> out;
  for (std::size_t i = 0; i < budgets.size(); ++i) {
    Slice s;
    s.id = static_cast<SliceId>(i + 1);
    s.service_id = static_cast<ServiceId>(i);
    s.rb_budget = budgets[i];
    out.push_back(s);
  }
  return out;
}

TEST(Slicing, DefaultCatalog)
{
  const auto catalog = default_catalog();
  ASSERT_EQ(catalog.size(), 7u);
  std::set<ServiceId> ids;
  for (const auto& s : catalog) {
    EXPECT_NO_THROW(validate(s));
    EXPECT_GE(s.delay_budget_s, 5e-3);
    EXPECT_LE(s.delay_budget_s, 300e-3);
    EXPECT_GE(s.packet_min_bytes, 1e3);
    EXPECT_LE(s.packet_max_bytes, 10e6);
    ids.insert(s.id);
  }
  EXPECT_EQ(ids.size(), 7u);
  EXPECT_DOUBLE_EQ(catalog.front().delay_budget_s, 5e-3);
  EXPECT_DOUBLE_EQ(catalog.back().delay_budget_s, 300e-3);
}

TEST(Slicing, ServiceValidation)
{
  Service s;
  s.delay_budget_s = 0.0;
  EXPECT_THROW(validate(s), std::invalid_argument);
  s = Service{};
  s.packet_min_bytes = 2e3;
  s.packet_max_bytes = 1e3;
  EXPECT_THROW(validate(s), std::invalid_argument);
  s = Service{};
  s.packet_min_bytes = 500.0;
  EXPECT_THROW(validate(s), std::invalid_argument);
  s = Service{};
  s.packet_max_bytes = 20e6;
  EXPECT_THROW(validate(s), std::invalid_argument);
  s = Service{};
  s.arrival_rate = -1.0;
  EXPECT_THROW(validate(s), std::invalid_argument);
}

TEST(Slicing, InitialSplit)
{
  EXPECT_EQ(initial_split(273, 3), (std::vector<RbCount>{91, 91, 91}));
  EXPECT_EQ(split_residual(273, 3), 0);
  EXPECT_EQ(initial_split(10, 3), (std::vector<RbCount>{3, 3, 3}));
  EXPECT_EQ(split_residual(10, 3), 1);
  EXPECT_EQ(initial_split(0, 3), (std::vector<RbCount>{0, 0, 0}));
  EXPECT_THROW((void)initial_split(10, 0), std::invalid_argument);
  EXPECT_THROW((void)initial_split(-1, 3), std::invalid_argument);
}

TEST(Slicing, RoundRobinCycle)
{
  const auto slices = slices_with({10, 10, 10, 10, 10, 10, 10});
  const std::vector<RbCount> caps{91, 91, 91};
  const auto p = round_robin_place(slices, caps);
  EXPECT_EQ(p.vodus[0].slices, (std::vector<SliceId>{1, 4, 7}));
  EXPECT_EQ(p.vodus[1].slices, (std::vector<SliceId>{2, 5}));
  EXPECT_EQ(p.vodus[2].slices, (std::vector<SliceId>{3, 6}));
  EXPECT_TRUE(p.unplaced.empty());
}

TEST(Slicing, RoundRobinSkipsFullVodus)
{
  const auto slices = slices_with({60, 60, 60, 30, 50});
  const std::vector<RbCount> caps{91, 91, 91};
  const auto p = round_robin_place(slices, caps);
  EXPECT_EQ(p.vodu_of.at(4), 0u);
  // Every vO-DU is down to 31 or less.
  EXPECT_EQ(p.unplaced, (std::vector<SliceId>{5}));
}

TEST(Slicing, Usage)
{
  EXPECT_DOUBLE_EQ(rb_usage(std::vector<RbCount>{30, 30, 31}, 91), 1.0);
  EXPECT_DOUBLE_EQ(rb_usage(std::vector<RbCount>{}, 91), 0.0);
  EXPECT_DOUBLE_EQ(rb_usage(std::vector<RbCount>{5}, 0), 0.0);
  EXPECT_NEAR(rb_usage(std::vector<RbCount>{20, 30}, 91), 0.5495, 1e-4);
}

TEST(Slicing, RegistryAccounts)
{
  const auto slices = slices_with({20, 30, 40});
  const std::vector<RbCount> caps{91, 91};
  SliceRegistry reg(slices, round_robin_place(slices, caps));
  EXPECT_EQ(reg.free(0), 91 - 20 - 40);
  EXPECT_EQ(reg.free(1), 61);
  EXPECT_TRUE(reg.conservation_ok());
  EXPECT_EQ(reg.placement_violations(), 0);
  EXPECT_EQ(reg.placement_count(1), 1);

  const auto up = reg.apply_delta(1, 50);
  EXPECT_EQ(up.applied, 31);
  EXPECT_TRUE(up.clipped);
  EXPECT_EQ(reg.free(0), 0);
  const auto down = reg.apply_delta(2, -100);
  EXPECT_EQ(down.applied, -30);
  EXPECT_EQ(reg.budget(2), 0);
  EXPECT_TRUE(reg.conservation_ok());
  EXPECT_NEAR(reg.usage(0), 1.0, 1e-12);
}

TEST(Slicing, RegistryRejectsBadBuffers)
{
  auto slices = slices_with({10});
  slices[0].buffer_threshold = slices[0].buffer_capacity;
  const std::vector<RbCount> caps{91};
  EXPECT_THROW(SliceRegistry(slices, round_robin_place(slices, caps)), std::invalid_argument);
}

TEST(SlicingProperty, PlacementAndConservation)
{
  Rng rng = make_stream(31, 0);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = testgen::uniform_int(rng, 0, 12);
    std::vector<RbCount> budgets;
    for (int i = 0; i < n; ++i) {
      budgets.push_back(testgen::uniform_int(rng, 0, 60));
    }
    const auto slices = slices_with(budgets);
    const int d = testgen::uniform_int(rng, 1, 4);
    const auto caps = initial_split(testgen::uniform_int(rng, 0, 300), d);
    const auto p = round_robin_place(slices, caps);
    EXPECT_EQ(p.vodu_of.size() + p.unplaced.size(), slices.size());
    SliceRegistry reg(slices, p);
    EXPECT_EQ(reg.placement_violations(), 0);
    for (std::size_t v = 0; v < caps.size(); ++v) {
      EXPECT_LE(reg.allocated(static_cast<VoduId>(v)), caps[v]);
    }
    ASSERT_TRUE(reg.conservation_ok());
    for (int k = 0; k < 50 && !reg.slices().empty(); ++k) {
      const auto& s = reg.slices()[testgen::uniform_int(rng, 0, static_cast<int>(reg.slices().size()) - 1)];
      (void)reg.apply_delta(s.id, testgen::uniform_int(rng, -80, 80));
      ASSERT_TRUE(reg.conservation_ok());
      EXPECT_GE(reg.budget(s.id), 0);
      EXPECT_GE(reg.free(*s.vodu), 0);
    }
  }
}

}  // namespace
}  // namespace ranslice::slicing
