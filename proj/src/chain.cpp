#include "vzor/chain.hpp"

#include "vzor/errors.hpp"

namespace vzor {

std::string_view to_string(ChainKind kind) { return kind == ChainKind::L1 ? "L1" : "L2"; }

ChainKind parse_chain_kind(std::string_view text) {
  if (text == "L1") return ChainKind::L1;
  if (text == "L2") return ChainKind::L2;
  throw Error(Errc::InvalidArgument, "unknown chain kind '" + std::string(text) + "'");
}

std::string_view to_string(GasOp op) {
  switch (op) {
    case GasOp::VerifyProof: return "verify_proof";
    case GasOp::SubmitFraud: return "submit_fraud";
    case GasOp::GovernanceUpdate: return "governance_update";
  }
  return "unknown";
}

GasOp parse_gas_op(std::string_view text) {
  if (text == "verify_proof") return GasOp::VerifyProof;
  if (text == "submit_fraud") return GasOp::SubmitFraud;
  if (text == "governance_update") return GasOp::GovernanceUpdate;
  throw Error(Errc::UnknownOperation, "unknown gas operation '" + std::string(text) + "'");
}

GasTable l1_gas_table() {
  return {{GasOp::VerifyProof, 296'112}, {GasOp::SubmitFraud, 52'341}, {GasOp::GovernanceUpdate, 38'220}};
}

GasTable l2_gas_table() {
  return {{GasOp::VerifyProof, 88'029}, {GasOp::SubmitFraud, 17'904}, {GasOp::GovernanceUpdate, 11'706}};
}

void ChainConfig::validate() const {
  if (chain_id.empty()) throw Error(Errc::InvalidArgument, "chain id must be non-empty");
  if (block_time <= 0) throw Error(Errc::InvalidArgument, "block time must be positive");
  if (finality_blocks == 0) throw Error(Errc::InvalidArgument, "finality blocks must be positive");
  for (const GasOp op : {GasOp::VerifyProof, GasOp::SubmitFraud, GasOp::GovernanceUpdate}) {
    if (!gas_table.contains(op)) {
      throw Error(Errc::InvalidArgument,
                  "gas table of " + chain_id + " lacks " + std::string(to_string(op)));
    }
  }
  if (gas_table.at(GasOp::VerifyProof) > kVerifyGasCeiling) {
    throw Error(Errc::InvalidArgument, "verify cost on " + chain_id + " exceeds the 300000 gas ceiling");
  }
}

ChainConfig sepolia_config() {
  return ChainConfig{"sepolia", ChainKind::L1, 15 * kMicrosPerSecond, 1, l1_gas_table()};
}

ChainConfig scroll_config() {
  return ChainConfig{"scroll", ChainKind::L2, 2 * kMicrosPerSecond, 1, l2_gas_table()};
}

ChainSim::ChainSim(ChainConfig config) : config_(std::move(config)) { config_.validate(); }

std::uint64_t ChainSim::produce_block(Micros now) {
  if (now < last_block_time_ + config_.block_time) {
    throw Error(Errc::InvalidArgument, "block on " + config_.chain_id + " produced too early");
  }
  last_block_time_ = now;
  clock_ = std::max(clock_, now);
  return ++height_;
}

std::uint64_t ChainSim::advance_to(Micros now) {
  while (last_block_time_ + config_.block_time <= now) produce_block(last_block_time_ + config_.block_time);
  clock_ = std::max(clock_, now);
  return height_;
}

std::uint64_t ChainSim::gas_cost(GasOp op) const {
  const auto it = config_.gas_table.find(op);
  if (it == config_.gas_table.end()) {
    throw Error(Errc::UnknownOperation, std::string(to_string(op)) + " not priced on " + config_.chain_id);
  }
  return it->second;
}

std::uint64_t ChainSim::charge(GasOp op) {
  const auto gas = gas_cost(op);
  total_gas_ += gas;
  gas_by_op_[op] += gas;
  return gas;
}

std::uint64_t ChainSim::gas_used(GasOp op) const {
  const auto it = gas_by_op_.find(op);
  return it == gas_by_op_.end() ? 0 : it->second;
}

Receipt ChainSim::submit_packet(const OraclePacket& packet, const Committee& committee,
                                const KeyDirectory& registry, const AggregationParams& params,
                                Micros now) {
  if (now < clock_) throw Error(Errc::InvalidArgument, "submission in the past on " + config_.chain_id);
  advance_to(now);

  Receipt r;
  r.chain_id = config_.chain_id;
  r.epoch = packet.epoch;
  r.block_height = height_ + 1;  // block under construction
  r.timestamp = now;
  r.final_at = now + config_.finality_time();
  r.packet_digest = packet_digest(packet);
  r.gas_used = charge(GasOp::VerifyProof);
  r.result = verify(packet, committee, registry, params);
  r.duplicate = medians_.contains(packet.epoch);

  if (r.result.accepted) {
    if (!r.duplicate) medians_.emplace(packet.epoch, packet.median);
  } else {
    fraud_events_.push_back({config_.chain_id, packet.epoch, r.packet_digest, r.result.failure, now});
  }
  receipts_.push_back(r);
  return r;
}

std::optional<Price> ChainSim::recorded_median(Epoch epoch) const {
  const auto it = medians_.find(epoch);
  if (it == medians_.end()) return std::nullopt;
  return it->second;
}

}  // namespace vzor
