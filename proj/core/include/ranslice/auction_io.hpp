#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ranslice/auction.hpp"

// Auction instance file:
//   {"reserve_price": 15, "total_rbs": 273,
//    "bids": [{"tenant": 1, "service": 0, "price": 20.0, "quantity": 4}, ...]}
//
// Outcome document:
//   {"winners": [{"tenant", "service", "price", "quantity", "payment"}...],
//    "payments": [{"tenant", "service", "payment"}...],
//    "allocated_rbs", "unallocated_rbs", "total_rbs", "welfare", "revenue"}
namespace ranslice::auction {

class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AuctionInstance {
  AuctionConfig config;
  std::vector<TenantBid> bids;
};

[[nodiscard]] AuctionInstance parse_instance(std::string_view json_text);
[[nodiscard]] AuctionInstance load_instance(const std::filesystem::path& path);
[[nodiscard]] std::string instance_to_json(const AuctionInstance& instance);

[[nodiscard]] std::string outcome_to_json(const AuctionInstance& instance, const AuctionOutcome& outcome);

}  // namespace ranslice::auction
