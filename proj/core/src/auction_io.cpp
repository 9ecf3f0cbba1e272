#include "ranslice/auction_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ranslice::auction {

using nlohmann::json;

namespace {

template <typename T>
T required(const json& object, const char* key, const char* where)
{
  if (!object.contains(key)) {
    throw InstanceError(std::string(where) + ": missing field '" + key + "'");
  }
  try {
    return object.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InstanceError(std::string(where) + ": field '" + key + "' has the wrong type (" + e.what() + ")");
  }
}

}  // namespace

AuctionInstance parse_instance(std::string_view json_text)
{
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InstanceError(std::string("auction instance: ") + e.what());
  }
  if (!doc.is_object()) {
    throw InstanceError("auction instance: top level must be an object");
  }

  AuctionInstance instance;
  instance.config.reserve_price = required<double>(doc, "reserve_price", "auction instance");
  instance.config.total_rbs = required<RbCount>(doc, "total_rbs", "auction instance");
  if (!doc.contains("bids") || !doc["bids"].is_array()) {
    throw InstanceError("auction instance: 'bids' must be an array");
  }
  std::size_t index = 0;
  for (const auto& entry : doc["bids"]) {
    const std::string where = "bids[" + std::to_string(index++) + "]";
    TenantBid bid;
    bid.tenant_id = required<TenantId>(entry, "tenant", where.c_str());
    bid.service_id = required<ServiceId>(entry, "service", where.c_str());
    bid.price_per_rb = required<double>(entry, "price", where.c_str());
    bid.quantity = required<RbCount>(entry, "quantity", where.c_str());
    instance.bids.push_back(bid);
  }
  try {
    validate(instance.bids, instance.config);
  } catch (const std::invalid_argument& e) {
    throw InstanceError(e.what());
  }
  return instance;
}

AuctionInstance load_instance(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) {
    throw InstanceError("cannot open auction instance " + path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

std::string instance_to_json(const AuctionInstance& instance)
{
  json doc;
  doc["reserve_price"] = instance.config.reserve_price;
  doc["total_rbs"] = instance.config.total_rbs;
  doc["bids"] = json::array();
  for (const auto& bid : instance.bids) {
    doc["bids"].push_back(
        {{"tenant", bid.tenant_id}, {"service", bid.service_id}, {"price", bid.price_per_rb}, {"quantity", bid.quantity}});
  }
  return doc.dump(2);
}

std::string outcome_to_json(const AuctionInstance& instance, const AuctionOutcome& outcome)
{
  json doc;
  doc["winners"] = json::array();
  doc["payments"] = json::array();
  for (const auto& key : outcome.winners) {
    const auto bid = std::find_if(instance.bids.begin(), instance.bids.end(),
                                  [&](const TenantBid& b) { return b.key() == key; });
    const double payment = outcome.payments.contains(key) ? outcome.payments.at(key) : 0.0;
    json winner{{"tenant", key.tenant}, {"service", key.service}, {"quantity", outcome.allocations.at(key)}};
    if (bid != instance.bids.end()) {
      winner["price"] = bid->price_per_rb;
    }
    if (outcome.payments_set) {
      winner["payment"] = payment;
      winner["payment_capped"] = outcome.capped_payments.contains(key);
      doc["payments"].push_back({{"tenant", key.tenant}, {"service", key.service}, {"payment", payment}});
    }
    doc["winners"].push_back(winner);
  }
  doc["total_rbs"] = instance.config.total_rbs;
  doc["allocated_rbs"] = outcome.allocated_rbs();
  doc["unallocated_rbs"] = outcome.unallocated_rbs;
  doc["welfare"] = outcome.welfare;
  doc["revenue"] = outcome.revenue();
  return doc.dump(2);
}

}  // namespace ranslice::auction
