#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "ranslice/auction.hpp"
#include "ranslice/rng.hpp"

// Small seeded generators for the property tests.
namespace ranslice::testgen {

inline int uniform_int(Rng& rng, int lo, int hi)
{
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double uniform_real(Rng& rng, double lo, double hi)
{
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

struct AuctionCase {
  std::vector<auction::TenantBid> bids;
  auction::AuctionConfig config;
};

/// Up to `max_tenants` tenants with one or two services each, at most `max_bids`
/// bids in total, prices in [10, 20], reserve 15.
inline AuctionCase auction_case(Rng& rng, int max_tenants, RbCount max_total, int max_bids = 1'000)
{
  AuctionCase c;
  c.config.total_rbs = uniform_int(rng, 1, static_cast<int>(max_total));
  c.config.reserve_price = 15.0;
  const int tenants = uniform_int(rng, 1, max_tenants);
  for (int l = 0; l < tenants && static_cast<int>(c.bids.size()) < max_bids; ++l) {
    const int services = uniform_int(rng, 1, 2);
    std::set<ServiceId> used;
    for (int s = 0; s < services && static_cast<int>(c.bids.size()) < max_bids; ++s) {
      const auto service = static_cast<ServiceId>(uniform_int(rng, 0, 6));
      if (!used.insert(service).second) {
        continue;
      }
      auction::TenantBid bid;
      bid.tenant_id = static_cast<TenantId>(l);
      bid.service_id = service;
      // Whole cents keep exact ties possible.
      bid.price_per_rb = uniform_int(rng, 1000, 2000) / 100.0;
      bid.quantity = uniform_int(rng, 1, std::max(1, static_cast<int>(c.config.total_rbs / 2)));
      c.bids.push_back(bid);
    }
  }
  return c;
}

inline std::vector<double> random_vector(Rng& rng, std::size_t n, double lo, double hi)
{
  std::vector<double> v(n);
  for (auto& x : v) {
    x = uniform_real(rng, lo, hi);
  }
  return v;
}

}  // namespace ranslice::testgen
