#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <vector>

#include "ranslice/types.hpp"

/// Sealed-bid auction of resource blocks (RBs) between the infrastructure
/// provider and tenants.
///
/// Winner determination is greedy by price per RB with all-or-nothing grants;
/// each winner pays the externality it imposes on the other bidders (VCG).
/// All functions are pure over value data.
namespace ranslice::auction {

struct BidKey {
  TenantId tenant = 0;
  ServiceId service = 0;

  auto operator<=>(const BidKey&) const = default;
};

struct TenantBid {
  TenantId tenant_id = 0;
  ServiceId service_id = 0;
  double price_per_rb = 0.0;
  RbCount quantity = 1;

  [[nodiscard]] BidKey key() const { return {tenant_id, service_id}; }
  /// Declared value of the whole bid, price times quantity.
  [[nodiscard]] double value() const { return price_per_rb * static_cast<double>(quantity); }
};

struct AuctionConfig {
  RbCount total_rbs = 0;
  double reserve_price = 0.0;

  /// Provider valuation of the full RB pool at the reserve price.
  [[nodiscard]] double inp_valuation() const { return static_cast<double>(total_rbs) * reserve_price; }
};

struct AuctionOutcome {
  /// Winners in grant order (descending price).
  std::vector<BidKey> winners;
  std::map<BidKey, int> decisions;
  std::map<BidKey, RbCount> allocations;
  std::map<BidKey, double> payments;
  /// Winners whose raw externality exceeded their declared bid value and was capped.
  std::set<BidKey> capped_payments;
  RbCount unallocated_rbs = 0;
  /// Sum of declared values of the winning bids.
  double welfare = 0.0;
  bool payments_set = false;

  [[nodiscard]] bool is_winner(const BidKey& key) const;
  [[nodiscard]] RbCount allocated_rbs() const;
  [[nodiscard]] double revenue() const;
};

/// Throws std::invalid_argument when a bid or the configuration breaks its invariants
/// (quantity < 1, negative price, more than one bid per tenant/service pair).
void validate(std::span<const TenantBid> bids, const AuctionConfig& config);

/// Greedy winner determination. Bids below the reserve price are excluded, the
/// rest are scanned by descending price (ties: lower tenant, then lower service)
/// and granted in full while they fit; a bid that does not fit is skipped.
[[nodiscard]] AuctionOutcome determine_winners(std::span<const TenantBid> bids, const AuctionConfig& config);

/// Externality payments: for winner l, welfare of the greedy outcome without l
/// minus the welfare the other winners obtain with l present. Floored at 0 and
/// capped at l's declared bid value.
[[nodiscard]] AuctionOutcome vcg_payments(AuctionOutcome outcome, std::span<const TenantBid> bids,
                                          const AuctionConfig& config);

/// determine_winners followed by vcg_payments.
[[nodiscard]] AuctionOutcome run_auction(std::span<const TenantBid> bids, const AuctionConfig& config);

/// Quasi-linear utility: true valuation minus payment for winners, 0 for losers.
[[nodiscard]] double tenant_utility(const TenantBid& bid, double true_value_per_rb, const AuctionOutcome& outcome);

struct OptimalAllocation {
  double best_value = 0.0;
  std::map<BidKey, int> decisions;
  std::vector<BidKey> winners;
  RbCount allocated_rbs = 0;
};

inline constexpr std::size_t kMaxOracleBids = 20;

/// Exhaustive 2^n search of the total-revenue-maximisation integer program.
/// Test oracle only; throws std::length_error above kMaxOracleBids bids.
[[nodiscard]] OptimalAllocation brute_force_optimal(std::span<const TenantBid> bids, const AuctionConfig& config);

}  // namespace ranslice::auction
