#include "vzor/hub.hpp"

#include <algorithm>
#include <cmath>

#include "vzor/errors.hpp"

namespace vzor {

std::string_view to_string(GovernedParam param) {
  switch (param) {
    case GovernedParam::Quorum: return "f_min";
    case GovernedParam::SlashAmount: return "s_cut";
    case GovernedParam::CommitteeSize: return "n";
    case GovernedParam::MinStake: return "S_min";
  }
  return "unknown";
}

GovernedParam parse_governed_param(std::string_view text) {
  if (text == "f_min") return GovernedParam::Quorum;
  if (text == "s_cut") return GovernedParam::SlashAmount;
  if (text == "n") return GovernedParam::CommitteeSize;
  if (text == "S_min") return GovernedParam::MinStake;
  throw Error(Errc::UnknownParameter, "parameter '" + std::string(text) + "' is not governed");
}

std::string_view to_string(AdjudicationOutcome outcome) {
  switch (outcome) {
    case AdjudicationOutcome::Slashed: return "slashed";
    case AdjudicationOutcome::NotFraud: return "not_fraud";
    case AdjudicationOutcome::Duplicate: return "duplicate";
  }
  return "unknown";
}

FraudProof make_fraud_proof(const OraclePacket& packet, std::string origin_chain) {
  FraudProof f;
  f.packet = packet;
  f.committee_epoch = packet.epoch;
  f.origin_chain = std::move(origin_chain);
  if (packet.proof.revealed_witness) {
    const Witness& w = *packet.proof.revealed_witness;
    for (const auto& e : w.entries) f.accused.push_back({e, inclusion_proof(w, e.reporter_id)});
  }
  return f;
}

RestakingHub::RestakingHub(GovernedParams genesis, std::uint32_t governance_delay)
    : genesis_(genesis), delay_(governance_delay) {}

void RestakingHub::register_reporter(ReporterId id, Wei stake) {
  if (stakes_.contains(id)) {
    throw Error(Errc::AlreadyRegistered, "reporter " + std::to_string(id) + " already registered");
  }
  if (stake < genesis_.min_stake) {
    throw Error(Errc::InsufficientStake, "stake " + format_fixed(stake, kWeiDecimals) +
                                             " ETH below minimum " +
                                             format_fixed(genesis_.min_stake, kWeiDecimals) + " ETH");
  }
  stakes_.emplace(id, stake);
}

Wei RestakingHub::stake_of(ReporterId id) const {
  const auto it = stakes_.find(id);
  if (it == stakes_.end()) throw Error(Errc::UnknownReporter, "reporter " + std::to_string(id) + " unknown");
  return it->second;
}

bool RestakingHub::is_active(ReporterId id) const {
  const auto it = stakes_.find(id);
  return it != stakes_.end() && it->second > 0;
}

Wei RestakingHub::total_staked() const {
  Wei total = 0;
  for (const auto& [id, stake] : stakes_) total += stake;
  return total;
}

SlashReport RestakingHub::adjudicate(const FraudProof& fraud, const Committee& committee,
                                     const KeyDirectory& registry, const AggregationParams& params) {
  if (fraud.committee_epoch != fraud.packet.epoch || committee.epoch != fraud.committee_epoch) {
    throw Error(Errc::MalformedFraudProof, "fraud proof epoch does not match its packet/committee");
  }
  if (fraud.accused.empty()) throw Error(Errc::MalformedFraudProof, "fraud proof accuses nobody");

  SlashReport report;
  report.epoch = fraud.committee_epoch;
  report.packet_digest = packet_digest(fraud.packet);
  report.per_reporter_cut = effective_params(fraud.committee_epoch).slash_amount;

  if (adjudicated_.contains(report.packet_digest)) {
    report.outcome = AdjudicationOutcome::Duplicate;
    return report;
  }

  const VerifyResult result = verify(fraud.packet, committee, registry, params);
  report.verify_failure = result.failure;
  if (result.accepted) {
    report.outcome = AdjudicationOutcome::NotFraud;
    return report;
  }

  const Digest& root = fraud.packet.proof.witness_root;
  const auto& revealed = fraud.packet.proof.revealed_witness;
  std::set<ReporterId> done;
  for (const auto& acc : fraud.accused) {
    const ReporterId id = acc.entry.reporter_id;
    const bool in_witness =
        revealed && std::find(revealed->entries.begin(), revealed->entries.end(), acc.entry) !=
                        revealed->entries.end();
    if (!in_witness || !verify_inclusion(root, acc.entry, acc.inclusion) || !stakes_.contains(id) ||
        done.contains(id)) {
      report.skipped.push_back(id);
      continue;
    }
    done.insert(id);
    Wei& stake = stakes_.at(id);
    const Wei cut = std::min(report.per_reporter_cut, stake);
    stake -= cut;
    burned_ += cut;
    report.slashed.push_back(id);
    report.cuts.push_back(cut);
    report.total_cut += cut;
  }
  report.outcome = AdjudicationOutcome::Slashed;
  adjudicated_.insert(report.packet_digest);
  return report;
}

GovernanceUpdate RestakingHub::propose_update(GovernedParam param, Wei value, Epoch at_epoch) {
  if (value <= 0) throw Error(Errc::InvalidArgument, "governed values must be positive");
  if ((param == GovernedParam::Quorum || param == GovernedParam::CommitteeSize) &&
      value > static_cast<Wei>(UINT32_MAX)) {
    throw Error(Errc::InvalidArgument, "count parameter out of range");
  }
  GovernanceUpdate u{param, value, at_epoch, at_epoch + delay_};
  updates_.push_back(u);
  return u;
}

GovernedParams RestakingHub::effective_params(Epoch epoch) const {
  GovernedParams p = genesis_;
  // Later effective epochs win; among equal effective epochs, later proposals.
  std::vector<const GovernanceUpdate*> live;
  for (const auto& u : updates_) {
    if (u.effective_epoch <= epoch) live.push_back(&u);
  }
  std::stable_sort(live.begin(), live.end(), [](const auto* a, const auto* b) {
    return a->effective_epoch < b->effective_epoch;
  });
  for (const auto* u : live) {
    switch (u->param) {
      case GovernedParam::Quorum: p.quorum = static_cast<std::uint32_t>(u->value); break;
      case GovernedParam::CommitteeSize: p.committee_size = static_cast<std::uint32_t>(u->value); break;
      case GovernedParam::SlashAmount: p.slash_amount = u->value; break;
      case GovernedParam::MinStake: p.min_stake = u->value; break;
    }
  }
  return p;
}

bool economic_check(Wei slash_amount, Wei adversary_gain, std::uint32_t quorum) {
  if (quorum == 0) throw Error(Errc::InvalidArgument, "f_min must be >= 1");
  return slash_amount * static_cast<Wei>(quorum) > adversary_gain;
}

double collusion_bound(double lambda, double total_honest_stake, std::uint32_t kappa, std::uint64_t m) {
  if (lambda < 0 || total_honest_stake < 0) throw Error(Errc::InvalidArgument, "lambda and S must be >= 0");
  if (m == 0) throw Error(Errc::InvalidArgument, "m must be >= 1");
  const double per_epoch = std::exp(-lambda * total_honest_stake) + std::ldexp(1.0, -static_cast<int>(kappa));
  return std::clamp(static_cast<double>(m) * per_epoch, 0.0, 1.0);
}

}  // namespace vzor
