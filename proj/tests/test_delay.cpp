#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "generators.hpp"
#include "ranslice/delay.hpp"
#include "ranslice/mm1.hpp"

namespace ranslice::delay {
namespace {

TEST(Delay, QueueingDelay)
{
  EXPECT_NEAR(queueing_delay({50.0, 100.0, 1e3, 1}), 0.02, 1e-15);
  EXPECT_DOUBLE_EQ(queueing_delay({50.0, 100.0, 1e3, 0}), 0.0);
  EXPECT_TRUE(std::isinf(queueing_delay({100.0, 100.0, 1e3, 1})));
}

TEST(Delay, ServiceRateAndOccupancy)
{
  EXPECT_DOUBLE_EQ(service_rate(8e6, 1e3), 1000.0);
  EXPECT_DOUBLE_EQ(service_rate(-5.0, 1e3), 0.0);
  EXPECT_THROW((void)service_rate(1e6, 0.0), std::invalid_argument);
  EXPECT_DOUBLE_EQ(mm1_occupancy(50.0, 100.0), 1.0);
  EXPECT_DOUBLE_EQ(mm1_occupancy(0.0, 100.0), 0.0);
  EXPECT_TRUE(std::isinf(mm1_occupancy(100.0, 100.0)));
}

TEST(Delay, TransmissionDelays)
{
  const auto d = tx_delays(1e3, 8e6, 8e9, 2000.0);
  EXPECT_NEAR(d.wireless, 1e-3, 1e-15);
  EXPECT_NEAR(d.fronthaul, 1e-6, 1e-18);
  EXPECT_NEAR(d.propagation, 10e-6, 1e-18);
  const auto empty = tx_delays(0.0, 0.0, 8e9, 0.0);
  EXPECT_DOUBLE_EQ(empty.wireless, 0.0);
  EXPECT_DOUBLE_EQ(empty.fronthaul, 0.0);
  EXPECT_TRUE(std::isinf(tx_delays(1e3, 0.0, 8e9, 0.0).wireless));
  EXPECT_THROW((void)tx_delays(1e3, 1e6, 0.0, 0.0), std::invalid_argument);
}

TEST(DelayProperty, TotalIsSumOfParts)
{
  Rng rng = make_stream(41, 0);
  for (int trial = 0; trial < 500; ++trial) {
    const double lambda = testgen::uniform_real(rng, 0.0, 200.0);
    const FlowStats flow{lambda, lambda + testgen::uniform_real(rng, 0.1, 500.0),
                         testgen::uniform_real(rng, 1e3, 1e6), 1};
    const auto b = end_to_end(flow, testgen::uniform_real(rng, 1e5, 1e8), testgen::uniform_real(rng, 1e8, 1e10),
                              testgen::uniform_real(rng, 0.0, 5000.0));
    EXPECT_DOUBLE_EQ(b.total, b.queueing + b.wireless_tx + b.fronthaul_tx + b.propagation);
    EXPECT_GE(b.queueing, 0.0);
  }
}

TEST(Delay, BudgetFulfillment)
{
  EXPECT_EQ(budget_fulfillment(5e-3, 5e-3), 1);
  EXPECT_EQ(budget_fulfillment(kInfinity, 5e-3), 0);
  EXPECT_EQ(budget_fulfillment(4e-3, 5e-3), 1);
  EXPECT_EQ(budget_fulfillment(6e-3, 5e-3), 0);
}

TEST(Delay, SliceSatisfaction)
{
  const std::vector<int> ones{1, 1, 1, 1};
  EXPECT_DOUBLE_EQ(slice_satisfaction(ones, ones).phi, 1.0);
  const std::vector<int> half{1, 0, 1, 0};
  EXPECT_DOUBLE_EQ(slice_satisfaction(ones, half).phi, 0.5);
  EXPECT_DOUBLE_EQ(slice_satisfaction(half, ones).phi, 0.5);
  const std::vector<int> none;
  const auto empty = slice_satisfaction(none, none);
  EXPECT_DOUBLE_EQ(empty.phi, 0.0);
  EXPECT_TRUE(empty.no_demand);
  EXPECT_THROW((void)slice_satisfaction(ones, std::span(half).first(2)), std::invalid_argument);
}

TEST(Delay, QueueStatusRegimes)
{
  EXPECT_DOUBLE_EQ(queue_status(200, 150, 50).status, 150.0);
  EXPECT_EQ(regime(150, 200, 150), Regime::ScaleUp);
  EXPECT_DOUBLE_EQ(queue_status(200, 150, 0).status, 200.0);
  EXPECT_EQ(regime(200, 200, 150), Regime::Terminate);
  EXPECT_DOUBLE_EQ(queue_status(200, 150, 30).status, 170.0);
  EXPECT_EQ(regime(170, 200, 150), Regime::ScaleDown);
  EXPECT_THROW((void)queue_status(150, 150, 0), std::invalid_argument);
}

TEST(Delay, Orchestration)
{
  EXPECT_NEAR(orchestration(150, 200, 150), 4.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(orchestration(200, 200, 150), 0.0);
  EXPECT_DOUBLE_EQ(orchestration(170, 200, 150), 0.75);
}

TEST(Mm1, ValidatesRates)
{
  Rng rng = make_stream(1, 0);
  EXPECT_THROW((void)simulate_mm1(0.0, 100.0, 10, rng), std::invalid_argument);
  EXPECT_THROW((void)simulate_mm1(50.0, 0.0, 10, rng), std::invalid_argument);
}

// Lindley recursion on independently drawn gaps and service times gives the
// waiting-time oracle for the event-driven queue.
double lindley_mean_wait(double lambda, double mu, int n, Rng& rng)
{
  std::exponential_distribution<double> gap(lambda);
  std::exponential_distribution<double> service(mu);
  double w = 0.0;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    sum += w;
    w = std::max(0.0, w + service(rng) - gap(rng));
  }
  return sum / n;
}

TEST(Mm1, MatchesTheoryAndLindley)
{
  Rng rng = make_stream(42, 0);
  const auto r = simulate_mm1(50.0, 100.0, 200'000, rng);
  EXPECT_EQ(r.packets, 200'000u);
  EXPECT_NEAR(r.mean_sojourn, 0.02, 0.02 * 0.05);
  EXPECT_NEAR(r.mean_queue_wait, 0.01, 0.01 * 0.08);
  EXPECT_NEAR(r.mean_in_system, 1.0, 0.08);
  Rng oracle_rng = make_stream(43, 0);
  EXPECT_NEAR(r.mean_queue_wait, lindley_mean_wait(50.0, 100.0, 200'000, oracle_rng), 0.01 * 0.1);
  // Little's law inside the simulation.
  EXPECT_NEAR(r.mean_in_system, 50.0 * r.mean_sojourn, 0.05);
}

}  // namespace
}  // namespace ranslice::delay
