#pragma once

#include <string>

#include "ranslice/auction_io.hpp"

namespace ranslice::sim {

/// Greedy VCG against the exhaustive optimum on one instance.
struct AuctionComparison {
  RbCount total_rbs = 0;
  RbCount greedy_allocated = 0;
  RbCount oracle_allocated = 0;
  double greedy_fraction = 0.0;  // allocated / total, 0 when nothing is on offer
  double oracle_fraction = 0.0;
  double greedy_welfare = 0.0;
  double oracle_welfare = 0.0;
  double greedy_revenue = 0.0;   // VCG payments
  std::size_t greedy_winners = 0;
  std::size_t oracle_winners = 0;
  bool same_decisions = false;
};

/// Throws std::length_error when the instance is too large for the oracle.
[[nodiscard]] AuctionComparison compare_auction(const auction::AuctionInstance& instance);

[[nodiscard]] std::string comparison_to_table(const AuctionComparison& c);
[[nodiscard]] std::string comparison_to_json(const AuctionComparison& c);

}  // namespace ranslice::sim
