#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vzor/proof.hpp"
#include "vzor/types.hpp"

namespace vzor {

enum class ChainKind { L1, L2 };
enum class GasOp { VerifyProof, SubmitFraud, GovernanceUpdate };

std::string_view to_string(ChainKind kind);
ChainKind parse_chain_kind(std::string_view text);
std::string_view to_string(GasOp op);
GasOp parse_gas_op(std::string_view text);

inline constexpr std::uint64_t kVerifyGasCeiling = 300'000;

using GasTable = std::map<GasOp, std::uint64_t>;

// Measured verifier-contract costs (median of 100 trials) on an Ethereum
// testnet and a zk-rollup.
GasTable l1_gas_table();  // 296112 / 52341 / 38220
GasTable l2_gas_table();  // 88029 / 17904 / 11706

struct ChainConfig {
  std::string chain_id;
  ChainKind kind = ChainKind::L1;
  Micros block_time = 15 * kMicrosPerSecond;
  std::uint32_t finality_blocks = 1;
  GasTable gas_table;

  // tau_f
  Micros finality_time() const { return block_time * finality_blocks; }
  void validate() const;
};

ChainConfig sepolia_config();  // L1, 15 s blocks, 1-block finality
ChainConfig scroll_config();   // L2, 2 s blocks, 1-block finality

struct Receipt {
  std::string chain_id;
  Epoch epoch = 0;
  std::uint64_t block_height = 0;
  std::uint64_t gas_used = 0;
  VerifyResult result;
  Micros timestamp = 0;  // execution time
  Micros final_at = 0;   // timestamp + tau_f
  Digest packet_digest{};
  bool duplicate = false;  // epoch already had a recorded median
};

struct FraudEvent {
  std::string chain_id;
  Epoch epoch = 0;
  Digest packet_digest{};
  FailureReason reason;
  Micros emitted_at = 0;
};

/// Destination chain model: periodic blocks from genesis at time 0, an
/// on-chain verifier that records accepted medians, and a lookup-table gas
/// model. A transaction executes at its arrival time and is final tau_f later.
class ChainSim {
 public:
  explicit ChainSim(ChainConfig config);

  const ChainConfig& config() const noexcept { return config_; }
  std::uint64_t height() const noexcept { return height_; }
  Micros last_block_time() const noexcept { return last_block_time_; }

  /// Requires now >= last block time + block time.
  std::uint64_t produce_block(Micros now);
  /// Produces every periodic block due by `now`.
  std::uint64_t advance_to(Micros now);
  bool is_final(std::uint64_t block) const noexcept { return height_ >= block + config_.finality_blocks; }

  /// Throws Error(UnknownOperation). Verify cost is checked against the
  /// 300k ceiling when the chain is constructed.
  std::uint64_t gas_cost(GasOp op) const;
  std::uint64_t charge(GasOp op);

  Receipt submit_packet(const OraclePacket& packet, const Committee& committee,
                        const KeyDirectory& registry, const AggregationParams& params, Micros now);

  std::optional<Price> recorded_median(Epoch epoch) const;
  const std::vector<Receipt>& receipts() const noexcept { return receipts_; }
  const std::vector<FraudEvent>& fraud_events() const noexcept { return fraud_events_; }
  std::uint64_t total_gas() const noexcept { return total_gas_; }
  std::uint64_t gas_used(GasOp op) const;

 private:
  ChainConfig config_;
  std::uint64_t height_ = 0;
  Micros last_block_time_ = 0;
  Micros clock_ = 0;
  std::map<Epoch, Price> medians_;
  std::vector<Receipt> receipts_;
  std::vector<FraudEvent> fraud_events_;
  std::uint64_t total_gas_ = 0;
  std::map<GasOp, std::uint64_t> gas_by_op_;
};

}  // namespace vzor
