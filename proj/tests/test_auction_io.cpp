#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "ranslice/auction_io.hpp"

namespace ranslice::auction {
namespace {

TEST(AuctionIo, LoadsExampleInstance)
{
  const auto inst = load_instance(RANSLICE_SOURCE_DIR "/data/auction_example.json");
  EXPECT_EQ(inst.config.total_rbs, 10);
  EXPECT_DOUBLE_EQ(inst.config.reserve_price, 15.0);
  ASSERT_EQ(inst.bids.size(), 3u);
  EXPECT_EQ(inst.bids[1].tenant_id, 2u);
  EXPECT_EQ(inst.bids[1].quantity, 5);
}

TEST(AuctionIo, OutcomeDocument)
{
  const auto inst = load_instance(RANSLICE_SOURCE_DIR "/data/auction_example.json");
  const auto out = run_auction(inst.bids, inst.config);
  const auto j = nlohmann::json::parse(outcome_to_json(inst, out));
  ASSERT_EQ(j.at("winners").size(), 2u);
  EXPECT_EQ(j.at("winners")[0].at("tenant"), 1);
  EXPECT_DOUBLE_EQ(j.at("winners")[0].at("payment").get<double>(), 48.0);
  EXPECT_EQ(j.at("allocated_rbs"), 9);
  EXPECT_EQ(j.at("unallocated_rbs"), 1);
  EXPECT_DOUBLE_EQ(j.at("revenue").get<double>(), 96.0);
}

TEST(AuctionIo, RoundTrip)
{
  AuctionInstance inst;
  inst.config = {273, 15.0};
  inst.bids = {{4, 2, 17.25, 12}, {5, 6, 19.5, 30}};
  const auto back = parse_instance(instance_to_json(inst));
  EXPECT_EQ(back.config.total_rbs, 273);
  ASSERT_EQ(back.bids.size(), 2u);
  EXPECT_EQ(back.bids[0].key(), inst.bids[0].key());
  EXPECT_DOUBLE_EQ(back.bids[1].price_per_rb, 19.5);
  EXPECT_EQ(back.bids[1].quantity, 30);
}

TEST(AuctionIo, RejectsMalformedInput)
{
  EXPECT_THROW((void)parse_instance("not json"), InstanceError);
  EXPECT_THROW((void)parse_instance("[]"), InstanceError);
  EXPECT_THROW((void)parse_instance(R"({"reserve_price": 15, "bids": []})"), InstanceError);
  EXPECT_THROW((void)parse_instance(R"({"reserve_price": 15, "total_rbs": 10, "bids": {}})"), InstanceError);
  EXPECT_THROW((void)parse_instance(R"({"reserve_price": 15, "total_rbs": 10,
      "bids": [{"tenant": 1, "service": 0, "price": "high", "quantity": 1}]})"),
               InstanceError);
  EXPECT_THROW((void)parse_instance(R"({"reserve_price": 15, "total_rbs": 10,
      "bids": [{"tenant": 1, "service": 0, "price": 20, "quantity": 0}]})"),
               InstanceError);
  EXPECT_THROW((void)load_instance("/nonexistent/instance.json"), InstanceError);
}

}  // namespace
}  // namespace ranslice::auction
