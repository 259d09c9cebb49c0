#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "vzor/proof.hpp"
#include "vzor/types.hpp"

namespace vzor {

enum class GovernedParam { Quorum, SlashAmount, CommitteeSize, MinStake };

// "f_min", "s_cut", "n", "S_min"
std::string_view to_string(GovernedParam param);
GovernedParam parse_governed_param(std::string_view text);  // Error(UnknownParameter)

struct GovernedParams {
  std::uint32_t quorum = 10;
  std::uint32_t committee_size = 15;
  Wei slash_amount = 150'000'000'000'000'000;  // 0.15 ETH
  Wei min_stake = kWeiPerEth;

  bool operator==(const GovernedParams&) const = default;
};

struct GovernanceUpdate {
  GovernedParam param = GovernedParam::Quorum;
  Wei value = 0;  // count for f_min / n, wei for s_cut / S_min
  Epoch proposed_at = 0;
  Epoch effective_epoch = 0;
};

struct Accusation {
  WitnessEntry entry;
  InclusionProof inclusion;
};

struct FraudProof {
  OraclePacket packet;
  Epoch committee_epoch = 0;
  std::vector<Accusation> accused;
  std::string origin_chain;
};

/// Accuses every signer in the packet's revealed witness.
FraudProof make_fraud_proof(const OraclePacket& packet, std::string origin_chain);

enum class AdjudicationOutcome { Slashed, NotFraud, Duplicate };
std::string_view to_string(AdjudicationOutcome outcome);

struct SlashReport {
  Epoch epoch = 0;
  Digest packet_digest{};
  AdjudicationOutcome outcome = AdjudicationOutcome::NotFraud;
  FailureReason verify_failure;
  std::vector<ReporterId> slashed;
  std::vector<Wei> cuts;  // parallel to `slashed`
  std::vector<ReporterId> skipped;  // accusations whose inclusion proof failed
  Wei per_reporter_cut = 0;
  Wei total_cut = 0;

  bool applied() const noexcept { return outcome == AdjudicationOutcome::Slashed; }
};

/// Unified stake ledger with fraud adjudication and delayed governance.
///
/// Slashing follows the biconditional: a reporter is cut iff the packet fails
/// verification and their signature is proven (by Merkle inclusion against
/// the packet's witness root) to be part of the witness. Each cut is
/// min(s_cut, remaining stake) and is burned; stake never goes negative.
/// Adjudication is idempotent per packet digest.
class RestakingHub {
 public:
  explicit RestakingHub(GovernedParams genesis = {}, std::uint32_t governance_delay = 2);

  /// Throws Error(AlreadyRegistered) or Error(InsufficientStake).
  void register_reporter(ReporterId id, Wei stake);

  Wei stake_of(ReporterId id) const;  // Error(UnknownReporter)
  bool is_active(ReporterId id) const;
  const std::map<ReporterId, Wei>& stakes() const noexcept { return stakes_; }
  Wei burned_total() const noexcept { return burned_; }
  Wei total_staked() const;
  // sum(stakes) + burned; constant under slashing
  Wei conserved_total() const { return total_staked() + burned_; }

  /// Throws Error(MalformedFraudProof) for structurally broken claims.
  SlashReport adjudicate(const FraudProof& fraud, const Committee& committee,
                         const KeyDirectory& registry, const AggregationParams& params);

  /// Throws Error(UnknownParameter) / Error(InvalidArgument).
  GovernanceUpdate propose_update(GovernedParam param, Wei value, Epoch at_epoch);
  GovernanceUpdate propose_update(std::string_view param, Wei value, Epoch at_epoch) {
    return propose_update(parse_governed_param(param), value, at_epoch);
  }
  GovernedParams effective_params(Epoch epoch) const;
  const std::vector<GovernanceUpdate>& updates() const noexcept { return updates_; }
  std::uint32_t governance_delay() const noexcept { return delay_; }

 private:
  GovernedParams genesis_;
  std::uint32_t delay_;
  std::map<ReporterId, Wei> stakes_;
  Wei burned_ = 0;
  std::vector<GovernanceUpdate> updates_;
  std::set<Digest> adjudicated_;
};

/// Manipulation is unprofitable iff s_cut > R / f_min, evaluated exactly as
/// s_cut * f_min > R.
bool economic_check(Wei slash_amount, Wei adversary_gain, std::uint32_t quorum);

/// m * (exp(-lambda * S) + 2^-kappa), clamped to [0, 1].
double collusion_bound(double lambda, double total_honest_stake, std::uint32_t kappa, std::uint64_t m);

}  // namespace vzor
