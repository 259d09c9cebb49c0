#include <gtest/gtest.h>

#include "support.hpp"
#include "vzor/errors.hpp"
#include "vzor/observation.hpp"
#include "vzor/packet.hpp"

namespace vzor {
namespace {

using testing::make_registry;
using testing::oracle_median;

TEST(Observation, SignVerifyRoundTrip) {
  const auto reg = make_registry(2);
  const ValueRange range{1, 1000};
  const auto obs = sign_observation(reg.secrets[0], 500, 3, range);
  EXPECT_TRUE(verify_observation(reg.identities[0].public_key, obs, range));
  EXPECT_EQ(obs, sign_observation(reg.secrets[0], 500, 3, range));
  EXPECT_FALSE(verify_observation(reg.identities[1].public_key, obs, range));
  auto moved = obs;
  moved.epoch = 4;
  EXPECT_FALSE(verify_observation(reg.identities[0].public_key, moved, range));
  EXPECT_FALSE(verify_observation(reg.identities[0].public_key, obs, ValueRange{1, 499}));
  try {
    sign_observation(reg.secrets[0], 1001, 3, range);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ValueOutOfRange);
  }
  EXPECT_EQ(decode_observation(encode(obs)), obs);
  EXPECT_EQ(encode(obs).size(), 84u);
}

TEST(Median, SpecExamples) {
  const std::vector<Price> one{5}, three{3, 1, 2}, four{4, 1, 3, 2};
  EXPECT_EQ(median(one), 5);
  EXPECT_EQ(median(three), 2);
  EXPECT_EQ(median(four), oracle_median(four));
  EXPECT_EQ(median(four), 2);
  EXPECT_THROW(median(std::vector<Price>{}), Error);
}

// Property: median equals the sort-based oracle, is one of the inputs, and
// ignores input order.
TEST(Median, MatchesOracleMembershipAndPermutationInvariance) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 3000; ++i) {
    std::vector<Price> v(1 + rng() % 31);
    for (auto& x : v) x = static_cast<Price>(rng() % 200) - 100;
    const Price m = median(v);
    ASSERT_EQ(m, oracle_median(v));
    ASSERT_NE(std::find(v.begin(), v.end(), m), v.end());
    std::shuffle(v.begin(), v.end(), rng);
    ASSERT_EQ(median(v), m);
  }
}

// Property: with f_min honest values fixed, pushing the other n - f_min values
// to extremes keeps the median inside the honest span.
TEST(Median, BoundedInfluence) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 2000; ++i) {
    const std::size_t n = 15, f = 10;
    std::vector<Price> honest(f);
    for (auto& x : honest) x = 1000 + static_cast<Price>(rng() % 100);
    const auto [lo, hi] = std::minmax_element(honest.begin(), honest.end());
    std::vector<Price> all = honest;
    for (std::size_t k = f; k < n; ++k) {
      all.push_back(rng() % 2 ? std::numeric_limits<Price>::max() : std::numeric_limits<Price>::min());
    }
    const Price m = median(all);
    ASSERT_GE(m, *lo);
    ASSERT_LE(m, *hi);
  }
}

class PacketBuild : public ::testing::Test {
 protected:
  testing::Registry reg = make_registry(20);
  Committee committee = testing::draw_committee(reg, 8, 15);
  AggregationParams params;
};

TEST_F(PacketBuild, QuorumBoundary) {
  std::vector<Price> values(10, 2000);
  auto obs = testing::sign_values(reg, committee, values, 8);
  const OraclePacket p = build_packet(obs, committee, params);
  EXPECT_EQ(p.median, 2000);
  EXPECT_TRUE(verify(p, committee, reg.directory, params).accepted);
  obs.pop_back();
  try {
    build_packet(obs, committee, params);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::QuorumNotMet);
  }
}

TEST_F(PacketBuild, MedianOfOneToFifteenIsEight) {
  std::vector<Price> values;
  for (Price v = 1; v <= 15; ++v) values.push_back(v);
  const auto obs = testing::sign_values(reg, committee, values, 8);
  EXPECT_EQ(build_packet(obs, committee, params).median, oracle_median(values));
  EXPECT_EQ(build_packet(obs, committee, params).median, 8);
}

TEST_F(PacketBuild, DeterministicAndOrderIndependent) {
  std::vector<Price> values{5, 9, 1, 7, 3, 8, 2, 6, 4, 10, 11};
  auto obs = testing::sign_values(reg, committee, values, 8);
  const auto a = encode(build_packet(obs, committee, params));
  std::reverse(obs.begin(), obs.end());
  EXPECT_EQ(encode(build_packet(obs, committee, params)), a);
}

TEST_F(PacketBuild, RejectsStructuralErrorsAndDropsInvalidSignatures) {
  std::vector<Price> values(12, 100);
  auto obs = testing::sign_values(reg, committee, values, 8);

  auto dup = obs;
  dup.push_back(obs[0]);
  EXPECT_THROW(build_packet(dup, committee, params), Error);

  auto wrong_epoch = obs;
  wrong_epoch[0] = sign_observation(reg.secrets[wrong_epoch[0].reporter_id], 100, 9, {});
  EXPECT_THROW(build_packet(wrong_epoch, committee, params), Error);

  ReporterId outsider = 0;
  while (committee.contains(outsider)) ++outsider;
  auto foreign = obs;
  foreign.push_back(sign_observation(reg.secrets[outsider], 100, 8, {}));
  EXPECT_THROW(build_packet(foreign, committee, params), Error);

  auto forged = obs;
  forged[0].signature[5] ^= 1;
  forged[1].signature[5] ^= 1;
  const OraclePacket p = build_packet(forged, committee, params);
  EXPECT_EQ(p.proof.revealed_witness->entries.size(), 10u);
  forged[2].signature[5] ^= 1;
  EXPECT_THROW(build_packet(forged, committee, params), Error);
}

}  // namespace
}  // namespace vzor
