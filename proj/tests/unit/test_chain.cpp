#include <gtest/gtest.h>

#include "support.hpp"
#include "vzor/chain.hpp"
#include "vzor/errors.hpp"
#include "vzor/packet.hpp"

namespace vzor {
namespace {

TEST(Chain, GasTableConstants) {
  const ChainSim l1(sepolia_config()), l2(scroll_config());
  EXPECT_EQ(l1.gas_cost(GasOp::VerifyProof), 296112u);
  EXPECT_EQ(l1.gas_cost(GasOp::SubmitFraud), 52341u);
  EXPECT_EQ(l1.gas_cost(GasOp::GovernanceUpdate), 38220u);
  EXPECT_EQ(l2.gas_cost(GasOp::VerifyProof), 88029u);
  EXPECT_EQ(l2.gas_cost(GasOp::SubmitFraud), 17904u);
  EXPECT_EQ(l2.gas_cost(GasOp::GovernanceUpdate), 11706u);
  EXPECT_LE(l1.gas_cost(GasOp::VerifyProof), kVerifyGasCeiling);
  EXPECT_EQ(kVerifyGasCeiling, 300000u);
  EXPECT_THROW(l1.gas_cost(static_cast<GasOp>(99)), Error);
  EXPECT_THROW(parse_gas_op("mint"), Error);
}

TEST(Chain, ConfigValidation) {
  ChainConfig c = sepolia_config();
  c.gas_table[GasOp::VerifyProof] = 300001;
  EXPECT_THROW(ChainSim{c}, Error);
  c = scroll_config();
  c.block_time = 0;
  EXPECT_THROW(ChainSim{c}, Error);
  c = scroll_config();
  c.gas_table.erase(GasOp::SubmitFraud);
  EXPECT_THROW(ChainSim{c}, Error);
}

TEST(Chain, BlockProduction) {
  ChainSim l2(scroll_config());
  EXPECT_EQ(l2.advance_to(10 * kMicrosPerSecond), 5u);
  EXPECT_TRUE(l2.is_final(4));
  EXPECT_FALSE(l2.is_final(5));
  EXPECT_THROW(l2.produce_block(11 * kMicrosPerSecond), Error);
  EXPECT_EQ(l2.produce_block(12 * kMicrosPerSecond), 6u);

  ChainSim l1(sepolia_config());
  EXPECT_EQ(l1.advance_to(480 * 30 * kMicrosPerSecond), 960u);
}

class ChainSubmit : public ::testing::Test {
 protected:
  testing::Registry reg = testing::make_registry(20);
  Committee committee = testing::draw_committee(reg, 2, 15);
  AggregationParams params;
  OraclePacket packet = build_packet(
      testing::sign_values(reg, committee, std::vector<Price>(12, 777), 2), committee, params);
};

TEST_F(ChainSubmit, HonestPacketChargesVerifyGasAndRecordsMedian) {
  ChainSim l1(sepolia_config()), l2(scroll_config());
  const Receipt r1 = l1.submit_packet(packet, committee, reg.directory, params, 20 * kMicrosPerSecond);
  const Receipt r2 = l2.submit_packet(packet, committee, reg.directory, params, 20 * kMicrosPerSecond);
  EXPECT_EQ(r1.gas_used, 296112u);
  EXPECT_EQ(r2.gas_used, 88029u);
  EXPECT_TRUE(r1.result.accepted);
  EXPECT_EQ(r1.block_height, 2u);  // one block at 15 s, this tx in block 2
  EXPECT_EQ(r1.final_at, 35 * kMicrosPerSecond);
  EXPECT_EQ(r2.final_at, 22 * kMicrosPerSecond);
  EXPECT_EQ(l1.recorded_median(2), 777);
  EXPECT_FALSE(l1.recorded_median(3).has_value());
  EXPECT_TRUE(l1.fraud_events().empty());
}

TEST_F(ChainSubmit, InvalidPacketRejectedWithFraudEvent) {
  ChainSim l1(sepolia_config());
  OraclePacket bad = packet;
  bad.median += 1;
  const Receipt r = l1.submit_packet(bad, committee, reg.directory, params, 1);
  EXPECT_FALSE(r.result.accepted);
  EXPECT_EQ(r.gas_used, 296112u);
  ASSERT_EQ(l1.fraud_events().size(), 1u);
  EXPECT_EQ(l1.fraud_events()[0].reason.kind, FailureReason::Kind::WrongMedian);
  EXPECT_FALSE(l1.recorded_median(2).has_value());
}

TEST_F(ChainSubmit, DuplicateSubmissionDoesNotChangeState) {
  ChainSim l2(scroll_config());
  l2.submit_packet(packet, committee, reg.directory, params, 0);
  const Receipt again = l2.submit_packet(packet, committee, reg.directory, params, 5);
  EXPECT_TRUE(again.duplicate);
  EXPECT_EQ(l2.recorded_median(2), 777);
  EXPECT_EQ(l2.receipts().size(), 2u);
  EXPECT_THROW(l2.submit_packet(packet, committee, reg.directory, params, 4), Error);  // time went backwards
}

// Property: verify gas is independent of committee size and witness size.
TEST(Chain, GasConstancyAcrossCommitteeSizes) {
  const auto reg = testing::make_registry(20);
  for (const std::uint32_t n : {5u, 10u, 15u}) {
    const Committee c = testing::draw_committee(reg, 1, n);
    AggregationParams p;
    p.committee_size = n;
    p.quorum = n;
    const auto pkt = build_packet(testing::sign_values(reg, c, std::vector<Price>(n, 10), 1), c, p);
    ChainSim l1(sepolia_config());
    EXPECT_EQ(l1.submit_packet(pkt, c, reg.directory, p, 0).gas_used, 296112u) << n;
  }
}

// Property: heights and receipt timestamps never decrease.
TEST_F(ChainSubmit, MonotoneTime) {
  ChainSim l2(scroll_config());
  std::mt19937_64 rng(1);
  Micros t = 0;
  std::uint64_t last_height = 0;
  for (int i = 0; i < 200; ++i) {
    t += static_cast<Micros>(rng() % 5'000'000);
    const Receipt r = l2.submit_packet(packet, committee, reg.directory, params, t);
    ASSERT_GE(r.block_height, last_height);
    ASSERT_EQ(r.block_height, static_cast<std::uint64_t>(t / (2 * kMicrosPerSecond)) + 1);
    last_height = r.block_height;
  }
}

}  // namespace
}  // namespace vzor
