#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "support.hpp"
#include "vzor/committee.hpp"
#include "vzor/errors.hpp"
#include "vzor/vrf.hpp"

namespace vzor {
namespace {

using testing::make_registry;

TEST(Vrf, KeygenIsDeterministicAndDistinct) {
  const auto [a1, s1] = vrf_keygen(1, testing::seed_for(1, 1));
  const auto [a2, s2] = vrf_keygen(1, testing::seed_for(1, 1));
  const auto [b, sb] = vrf_keygen(2, testing::seed_for(1, 2));
  EXPECT_EQ(a1, a2);
  EXPECT_EQ(s1, s2);
  EXPECT_NE(a1.public_key, b.public_key);
  EXPECT_EQ(decode_identity(encode(a1)), a1);
  EXPECT_EQ(decode_secret(encode(s1)), s1);
}

TEST(Vrf, EvaluateIsUniqueAndVerifies) {
  const auto reg = make_registry(2);
  const Bytes in = sortition_input(genesis(testing::beacon_params()).value, 4);
  const VrfOutput o1 = vrf_evaluate(reg.secrets[0], in);
  EXPECT_EQ(o1, vrf_evaluate(reg.secrets[0], in));
  EXPECT_TRUE(vrf_verify(reg.identities[0].public_key, in, o1));
  EXPECT_FALSE(vrf_verify(reg.identities[1].public_key, in, o1));
  const Bytes other_epoch = sortition_input(genesis(testing::beacon_params()).value, 5);
  EXPECT_NE(vrf_evaluate(reg.secrets[0], other_epoch).value, o1.value);

  VrfOutput bumped = o1;
  for (int i = 31; i >= 0 && ++bumped.value[i] == 0; --i) {
  }
  EXPECT_FALSE(vrf_verify(reg.identities[0].public_key, in, bumped));
  EXPECT_THROW(vrf_evaluate(reg.secrets[0], Bytes{}), Error);
}

// Property: 1000 random single mutations of (value, proof, input) never verify.
TEST(Vrf, SoundnessUnderRandomMutations) {
  const auto reg = make_registry(1);
  std::mt19937_64 rng(99);
  const Bytes input = sortition_input(genesis(testing::beacon_params()).value, 1);
  const VrfOutput honest = vrf_evaluate(reg.secrets[0], input);
  const PublicKey pk = reg.identities[0].public_key;
  int accepted = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    VrfOutput out = honest;
    Bytes in = input;
    const auto bit = static_cast<std::uint8_t>(1u << (rng() % 8));
    switch (trial % 3) {
      case 0: out.value[rng() % out.value.size()] ^= bit; break;
      case 1: out.proof[rng() % out.proof.size()] ^= bit; break;
      default: in[rng() % in.size()] ^= bit; break;
    }
    accepted += vrf_verify(pk, in, out) ? 1 : 0;
  }
  EXPECT_EQ(accepted, 0);
}

// Three reporters, n = 2: the two smallest VRF values win, checked against a
// sort of the raw outputs.
TEST(Committee, LowestNPicksSmallestValues) {
  const auto reg = make_registry(3);
  const Pulse pulse = genesis(testing::beacon_params());
  const auto scored = evaluate_registry(reg.secrets, pulse, 0);
  std::vector<std::pair<Digest, ReporterId>> expect;
  for (const auto& s : scored) expect.push_back({s.output.value, s.identity.id});
  std::sort(expect.begin(), expect.end());
  SortitionParams sp;
  sp.committee_size = 2;
  const Committee c = select_committee(pulse, 0, scored, sp);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.members[0].identity.id, expect[0].second);
  EXPECT_EQ(c.members[1].identity.id, expect[1].second);
}

TEST(Committee, FullRegistryWhenNEqualsN) {
  const auto reg = make_registry(6);
  const Committee c = testing::draw_committee(reg, 3, 6);
  const auto members = c.ids();
  const std::set<ReporterId> ids(members.begin(), members.end());
  EXPECT_EQ(ids.size(), 6u);
}

TEST(Committee, RejectsBadScoresAndOversizedCommittees) {
  const auto reg = make_registry(4);
  const Pulse pulse = genesis(testing::beacon_params());
  auto scored = evaluate_registry(reg.secrets, pulse, 0);
  SortitionParams sp;
  sp.committee_size = 5;
  EXPECT_THROW(select_committee(pulse, 0, scored, sp), Error);
  sp.committee_size = 2;
  scored[1].output.value[0] ^= 1;
  try {
    select_committee(pulse, 0, scored, sp);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UnverifiableScore);
  }
  scored = evaluate_registry(reg.secrets, pulse, 0);
  EXPECT_THROW(select_committee(pulse, 1, scored, sp), Error);  // scores for another epoch
  sp.security_bits = 64;
  EXPECT_THROW(sp.validate(4), Error);
}

TEST(Committee, DeterministicForSameInputs) {
  const auto reg = make_registry(20);
  EXPECT_EQ(testing::draw_committee(reg, 9, 5).ids(), testing::draw_committee(reg, 9, 5).ids());
}

TEST(Committee, ThresholdModeUsesExactComparison) {
  Digest v{};
  EXPECT_TRUE(below_threshold(v, 15));
  v.fill(0xff);
  EXPECT_FALSE(below_threshold(v, 2));
  EXPECT_TRUE(below_threshold(v, 1));
  // 2^256 / 4 = 0x40 00.. : 0x3f ff.. is below, 0x40 00.. is not
  Digest below{};
  below.fill(0xff);
  below[0] = 0x3f;
  Digest at{};
  at[0] = 0x40;
  EXPECT_TRUE(below_threshold(below, 4));
  EXPECT_FALSE(below_threshold(at, 4));
  EXPECT_THROW(below_threshold(v, 0), Error);

  const auto reg = make_registry(50);
  const Pulse pulse = genesis(testing::beacon_params());
  const auto scored = evaluate_registry(reg.secrets, pulse, 2);
  SortitionParams sp;
  sp.mode = SortitionMode::Threshold;
  sp.committee_size = 5;
  const Committee c = select_committee(pulse, 2, scored, sp);
  std::size_t expected = 0;
  for (const auto& s : scored) expected += below_threshold(s.output.value, 5) ? 1 : 0;
  EXPECT_EQ(c.size(), expected);
}

TEST(Committee, PredictionBound) {
  EXPECT_NEAR(prediction_bound(0, 15, 128), 0.0, 1e-30);
  EXPECT_NEAR(prediction_bound(5, 15, 128), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(prediction_bound(15, 15, 128), 1.0, 1e-12);
  EXPECT_THROW(prediction_bound(16, 15, 128), Error);
}

TEST(Committee, DigestIgnoresScoreOrder) {
  const auto reg = make_registry(8);
  Committee c = testing::draw_committee(reg, 1, 5);
  const Digest d = committee_digest(c);
  std::reverse(c.members.begin(), c.members.end());
  EXPECT_EQ(committee_digest(c), d);
  c.epoch = 2;
  EXPECT_NE(committee_digest(c), d);
}

// Property: flipping one pulse bit changes the committee almost always.
TEST(Committee, UnpredictabilityProxy) {
  const auto reg = make_registry(50);
  std::mt19937_64 rng(5);
  int changed = 0;
  const int trials = 200;  // the full 1000-trial run is in the acceptance binary
  for (int t = 0; t < trials; ++t) {
    Pulse p = genesis(testing::beacon_params(static_cast<std::uint8_t>(t)));
    SortitionParams sp;
    const auto base = select_committee(p, 0, evaluate_registry(reg.secrets, p, 0), sp).ids();
    p.value[rng() % 64] ^= static_cast<std::uint8_t>(1u << (rng() % 8));
    auto flipped = select_committee(p, 0, evaluate_registry(reg.secrets, p, 0), sp).ids();
    std::set<ReporterId> a(base.begin(), base.end()), b(flipped.begin(), flipped.end());
    changed += a != b ? 1 : 0;
  }
  EXPECT_GE(changed, trials * 95 / 100);
}

}  // namespace
}  // namespace vzor
