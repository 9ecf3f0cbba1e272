#include "ranslice/sim/compare.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace ranslice::sim {

namespace {

double fraction(RbCount part, RbCount total)
{
  return total <= 0 ? 0.0 : static_cast<double>(part) / static_cast<double>(total);
}

}  // namespace

AuctionComparison compare_auction(const auction::AuctionInstance& instance)
{
  const auto greedy = auction::run_auction(instance.bids, instance.config);
  const auto oracle = auction::brute_force_optimal(instance.bids, instance.config);
  AuctionComparison c;
  c.total_rbs = instance.config.total_rbs;
  c.greedy_allocated = greedy.allocated_rbs();
  c.oracle_allocated = oracle.allocated_rbs;
  c.greedy_fraction = fraction(c.greedy_allocated, c.total_rbs);
  c.oracle_fraction = fraction(c.oracle_allocated, c.total_rbs);
  c.greedy_welfare = greedy.welfare;
  c.oracle_welfare = oracle.best_value;
  c.greedy_revenue = greedy.revenue();
  c.greedy_winners = greedy.winners.size();
  c.oracle_winners = oracle.winners.size();
  c.same_decisions = greedy.decisions == oracle.decisions;
  return c;
}

std::string comparison_to_table(const AuctionComparison& c)
{
  std::string out = fmt::format("{:<8} {:>8} {:>10} {:>12} {:>10}\n", "method", "winners", "allocated", "welfare",
                                "fraction");
  out += fmt::format("{:<8} {:>8} {:>10} {:>12.2f} {:>10.4f}\n", "greedy", c.greedy_winners, c.greedy_allocated,
                     c.greedy_welfare, c.greedy_fraction);
  out += fmt::format("{:<8} {:>8} {:>10} {:>12.2f} {:>10.4f}\n", "oracle", c.oracle_winners, c.oracle_allocated,
                     c.oracle_welfare, c.oracle_fraction);
  out += fmt::format("greedy VCG revenue {:.2f}; decisions {}\n", c.greedy_revenue,
                     c.same_decisions ? "match" : "differ");
  return out;
}

std::string comparison_to_json(const AuctionComparison& c)
{
  const nlohmann::json j{
      {"total_rbs", c.total_rbs},
      {"greedy", {{"winners", c.greedy_winners},
                  {"allocated_rbs", c.greedy_allocated},
                  {"allocated_fraction", c.greedy_fraction},
                  {"welfare", c.greedy_welfare},
                  {"revenue", c.greedy_revenue}}},
      {"oracle", {{"winners", c.oracle_winners},
                  {"allocated_rbs", c.oracle_allocated},
                  {"allocated_fraction", c.oracle_fraction},
                  {"welfare", c.oracle_welfare}}},
      {"same_decisions", c.same_decisions},
  };
  return j.dump(2);
}

}  // namespace ranslice::sim
