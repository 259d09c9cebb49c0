#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vzor/beacon.hpp"
#include "vzor/chain.hpp"
#include "vzor/committee.hpp"
#include "vzor/hub.hpp"
#include "vzor/observation.hpp"
#include "vzor/proof.hpp"

namespace vzor {

struct TimingModel {
  Micros epoch_interval = 30 * kMicrosPerSecond;
  Micros delta_net_min = 100'000;    // message delays are uniform in
  Micros delta_net_max = 2'000'000;  // [delta_net_min, delta_net_max]
  ProvingModel proving;

  Micros prove_time(std::size_t witness_bytes) const;
};

enum class AdversaryBehavior { Honest, WrongValue, WrongMedianPacket, Withhold };

std::string_view to_string(AdversaryBehavior behavior);
AdversaryBehavior parse_adversary_behavior(std::string_view text);

struct AdversaryConfig {
  std::vector<ReporterId> controlled;  // b = controlled.size()
  AdversaryBehavior behavior = AdversaryBehavior::WrongMedianPacket;
  std::uint64_t fraud_period = 60;  // 0 disables injection

  // wrong-median packets are injected on epochs t with t % period == period - 1
  bool injects_fraud(Epoch epoch) const;
};

struct GovernanceProposal {
  GovernedParam param = GovernedParam::SlashAmount;
  Wei value = 0;
  Epoch at_epoch = 0;
};

/// Everything a run depends on. Defaults reproduce the benchmark setup:
/// 480 epochs of 30 s, N = 50, n = 15, f_min = 10, s_cut = 0.15 ETH,
/// Delta_gov = 2, a wrong-median packet every 60 epochs, an L1 (15 s) and an
/// L2 (2 s) destination chain.
struct ScenarioConfig {
  std::uint64_t seed = 1;
  std::uint32_t registry_size = 50;
  SortitionParams sortition;
  std::uint32_t quorum = 10;
  std::uint64_t epochs = 480;
  TimingModel timing;
  std::uint64_t beacon_period_seconds = 60;
  std::uint32_t beacon_min_entropy_bits = 256;
  std::optional<Digest> beacon_seed;  // derived from `seed` when absent
  std::vector<ChainConfig> chains{sepolia_config(), scroll_config()};
  AdversaryConfig adversary;
  Wei min_stake = kWeiPerEth;
  Wei initial_stake = 2 * kWeiPerEth;
  Wei slash_amount = 150'000'000'000'000'000;
  std::uint32_t governance_delay = 2;
  std::vector<GovernanceProposal> governance;
  ValueRange value_range{1, 100'000'000 * kPriceScale};
  Price truth_price = 2000 * kPriceScale;
  std::uint32_t noise_bps = 50;

  /// Throws Error(InvalidScenario) describing the first violated rule.
  void validate() const;

  BeaconParams beacon_params() const;
  GovernedParams genesis_params() const;
  AggregationParams aggregation(const GovernedParams& effective) const;
  SortitionParams sortition_for(const GovernedParams& effective) const;
};

/// Flat `key = value` text, `#` comments. Unknown keys and malformed values
/// raise Error(ConfigParse) naming the line.
ScenarioConfig parse_scenario(std::istream& in);
ScenarioConfig parse_scenario_text(std::string_view text);
ScenarioConfig load_scenario(const std::string& path);

/// Every key with its effective value, in a fixed order; parsing the output
/// yields an identical configuration.
std::string canonical_text(const ScenarioConfig& config);

/// Applies one `key = value` assignment (used by the parser and by sweeps).
void apply_setting(ScenarioConfig& config, std::string_view key, std::string_view value);

}  // namespace vzor
