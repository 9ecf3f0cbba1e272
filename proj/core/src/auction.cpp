#include "ranslice/auction.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ranslice::auction {

bool AuctionOutcome::is_winner(const BidKey& key) const
{
  return allocations.contains(key);
}

RbCount AuctionOutcome::allocated_rbs() const
{
  RbCount total = 0;
  for (const auto& [key, rbs] : allocations) {
    total += rbs;
  }
  return total;
}

double AuctionOutcome::revenue() const
{
  double total = 0.0;
  for (const auto& [key, payment] : payments) {
    total += payment;
  }
  return total;
}

void validate(std::span<const TenantBid> bids, const AuctionConfig& config)
{
  if (config.total_rbs < 0) {
    throw std::invalid_argument("auction: total_rbs must be non-negative");
  }
  if (!(config.reserve_price >= 0.0)) {
    throw std::invalid_argument("auction: reserve_price must be non-negative");
  }
  std::set<BidKey> seen;
  for (const auto& bid : bids) {
    if (bid.quantity < 1) {
      throw std::invalid_argument("auction: bid of tenant " + std::to_string(bid.tenant_id) +
                                  " has quantity < 1");
    }
    if (!(bid.price_per_rb >= 0.0)) {
      throw std::invalid_argument("auction: bid of tenant " + std::to_string(bid.tenant_id) +
                                  " has a negative price");
    }
    if (!seen.insert(bid.key()).second) {
      throw std::invalid_argument("auction: tenant " + std::to_string(bid.tenant_id) +
                                  " submitted more than one bid for service " + std::to_string(bid.service_id));
    }
  }
}

namespace {

bool bid_order(const TenantBid& a, const TenantBid& b)
{
  if (a.price_per_rb != b.price_per_rb) {
    return a.price_per_rb > b.price_per_rb;
  }
  if (a.tenant_id != b.tenant_id) {
    return a.tenant_id < b.tenant_id;
  }
  return a.service_id < b.service_id;
}

}  // namespace

AuctionOutcome determine_winners(std::span<const TenantBid> bids, const AuctionConfig& config)
{
  validate(bids, config);

  AuctionOutcome outcome;
  std::vector<TenantBid> eligible;
  eligible.reserve(bids.size());
  for (const auto& bid : bids) {
    outcome.decisions[bid.key()] = 0;
    if (bid.price_per_rb >= config.reserve_price) {
      eligible.push_back(bid);
    }
  }
  std::sort(eligible.begin(), eligible.end(), bid_order);

  RbCount remaining = config.total_rbs;
  for (const auto& bid : eligible) {
    if (bid.quantity > remaining) {
      continue;
    }
    remaining -= bid.quantity;
    outcome.winners.push_back(bid.key());
    outcome.decisions[bid.key()] = 1;
    outcome.allocations[bid.key()] = bid.quantity;
    outcome.welfare += bid.value();
  }
  outcome.unallocated_rbs = remaining;
  return outcome;
}

AuctionOutcome vcg_payments(AuctionOutcome outcome, std::span<const TenantBid> bids, const AuctionConfig& config)
{
  std::vector<TenantBid> others;
  others.reserve(bids.size());
  outcome.payments.clear();
  outcome.capped_payments.clear();

  for (const auto& bid : bids) {
    if (!outcome.is_winner(bid.key())) {
      continue;
    }
    others.clear();
    for (const auto& other : bids) {
      if (other.key() != bid.key()) {
        others.push_back(other);
      }
    }
    const double welfare_without = determine_winners(others, config).welfare;
    const double others_with = outcome.welfare - bid.value();
    double payment = std::max(0.0, welfare_without - others_with);
    if (payment > bid.value()) {
      payment = bid.value();
      outcome.capped_payments.insert(bid.key());
    }
    outcome.payments[bid.key()] = payment;
  }
  outcome.payments_set = true;
  return outcome;
}

AuctionOutcome run_auction(std::span<const TenantBid> bids, const AuctionConfig& config)
{
  return vcg_payments(determine_winners(bids, config), bids, config);
}

double tenant_utility(const TenantBid& bid, double true_value_per_rb, const AuctionOutcome& outcome)
{
  const auto it = outcome.payments.find(bid.key());
  if (!outcome.is_winner(bid.key()) || it == outcome.payments.end()) {
    return 0.0;
  }
  return true_value_per_rb * static_cast<double>(bid.quantity) - it->second;
}

OptimalAllocation brute_force_optimal(std::span<const TenantBid> bids, const AuctionConfig& config)
{
  if (bids.size() > kMaxOracleBids) {
    throw std::length_error("brute_force_optimal: " + std::to_string(bids.size()) + " bids exceeds the limit of " +
                            std::to_string(kMaxOracleBids));
  }
  validate(bids, config);

  const std::size_t n = bids.size();
  std::uint32_t eligible_mask = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (bids[i].price_per_rb >= config.reserve_price) {
      eligible_mask |= (1U << i);
    }
  }

  double best_value = 0.0;
  std::uint32_t best_mask = 0;
  const std::uint32_t limit = 1U << n;
  for (std::uint32_t mask = 1; mask < limit; ++mask) {
    if ((mask & ~eligible_mask) != 0) {
      continue;
    }
    RbCount used = 0;
    double value = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1U << i)) {
        used += bids[i].quantity;
        value += bids[i].value();
      }
    }
    if (used <= config.total_rbs && value > best_value) {
      best_value = value;
      best_mask = mask;
    }
  }

  OptimalAllocation result;
  result.best_value = best_value;
  for (std::size_t i = 0; i < n; ++i) {
    const bool chosen = (best_mask & (1U << i)) != 0;
    result.decisions[bids[i].key()] = chosen ? 1 : 0;
    if (chosen) {
      result.winners.push_back(bids[i].key());
      result.allocated_rbs += bids[i].quantity;
    }
  }
  return result;
}

}  // namespace ranslice::auction
