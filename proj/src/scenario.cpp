#include "vzor/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "vzor/crypto.hpp"
#include "vzor/errors.hpp"

namespace vzor {

Micros TimingModel::prove_time(std::size_t witness_bytes) const {
  return static_cast<Micros>(std::llround(modeled_prove_time(proving, witness_bytes) * 1e6));
}

std::string_view to_string(AdversaryBehavior behavior) {
  switch (behavior) {
    case AdversaryBehavior::Honest: return "honest";
    case AdversaryBehavior::WrongValue: return "wrong_value";
    case AdversaryBehavior::WrongMedianPacket: return "wrong_median_packet";
    case AdversaryBehavior::Withhold: return "withhold";
  }
  return "unknown";
}

AdversaryBehavior parse_adversary_behavior(std::string_view text) {
  for (const auto b : {AdversaryBehavior::Honest, AdversaryBehavior::WrongValue,
                       AdversaryBehavior::WrongMedianPacket, AdversaryBehavior::Withhold}) {
    if (to_string(b) == text) return b;
  }
  throw Error(Errc::InvalidArgument, "unknown adversary behavior '" + std::string(text) + "'");
}

bool AdversaryConfig::injects_fraud(Epoch epoch) const {
  return behavior == AdversaryBehavior::WrongMedianPacket && fraud_period > 0 &&
         epoch % fraud_period == fraud_period - 1;
}

namespace {

[[noreturn]] void invalid(const std::string& why) { throw Error(Errc::InvalidScenario, why); }

}  // namespace

void ScenarioConfig::validate() const {
  if (registry_size == 0) invalid("registry_size must be >= 1");
  if (quorum == 0) invalid("quorum (f_min) must be >= 1");
  if (quorum > sortition.committee_size) {
    invalid("quorum f_min=" + std::to_string(quorum) + " exceeds committee size n=" +
            std::to_string(sortition.committee_size));
  }
  if (sortition.committee_size > registry_size) {
    invalid("committee size n=" + std::to_string(sortition.committee_size) +
            " exceeds registry size N=" + std::to_string(registry_size));
  }
  try {
    sortition.validate(registry_size);
    beacon_params().validate();
  } catch (const Error& e) {
    invalid(e.what());
  }
  if (epochs == 0) invalid("epochs must be >= 1");
  if (timing.epoch_interval <= 0) invalid("epoch interval must be positive");
  if (timing.delta_net_min < 0 || timing.delta_net_max < timing.delta_net_min) {
    invalid("network delay bounds must satisfy 0 <= min <= max");
  }
  if (timing.prove_time(0) < 0 || timing.prove_time(1 << 20) < 0) invalid("proving time must be >= 0");
  if (chains.empty()) invalid("at least one destination chain is required");
  std::set<std::string> ids;
  for (const auto& c : chains) {
    try {
      c.validate();
    } catch (const Error& e) {
      invalid(e.what());
    }
    if (!ids.insert(c.chain_id).second) invalid("duplicate chain id '" + c.chain_id + "'");
  }
  std::set<ReporterId> controlled;
  for (const auto id : adversary.controlled) {
    if (id >= registry_size) invalid("adversary id " + std::to_string(id) + " not in registry");
    if (!controlled.insert(id).second) invalid("duplicate adversary id " + std::to_string(id));
  }
  if (min_stake <= 0) invalid("S_min must be positive");
  if (initial_stake < min_stake) invalid("initial stake below S_min");
  if (slash_amount <= 0) invalid("s_cut must be positive");
  if (value_range.min > value_range.max) invalid("value_min exceeds value_max");
  const Price noise = static_cast<Price>(static_cast<Wei>(truth_price) * noise_bps / 10'000);
  if (!value_range.contains(truth_price - noise) || !value_range.contains(truth_price + noise)) {
    invalid("truth price +/- noise leaves the value range");
  }
  for (const auto& g : governance) {
    if (g.value <= 0) invalid("governance values must be positive");
  }
}

BeaconParams ScenarioConfig::beacon_params() const {
  BeaconParams p;
  p.period_seconds = beacon_period_seconds;
  p.min_entropy_bits = beacon_min_entropy_bits;
  if (beacon_seed) {
    p.seed = *beacon_seed;
  } else {
    ByteWriter w;
    w.u64(seed);
    p.seed = sha256_tagged("VZOR/beacon-seed/v1", w.bytes());
  }
  return p;
}

GovernedParams ScenarioConfig::genesis_params() const {
  return GovernedParams{quorum, sortition.committee_size, slash_amount, min_stake};
}

AggregationParams ScenarioConfig::aggregation(const GovernedParams& effective) const {
  return AggregationParams{effective.quorum, effective.committee_size, value_range};
}

SortitionParams ScenarioConfig::sortition_for(const GovernedParams& effective) const {
  SortitionParams p = sortition;
  p.committee_size = effective.committee_size;
  return p;
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    const auto piece = trim(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start));
    if (!piece.empty()) out.push_back(piece);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::uint64_t parse_uint(std::string_view key, std::string_view v) {
  const Wei x = parse_fixed(v, 0);
  if (x < 0 || x > static_cast<Wei>(UINT64_MAX)) {
    throw Error(Errc::InvalidArgument, std::string(key) + " must be a non-negative integer");
  }
  return static_cast<std::uint64_t>(x);
}

std::uint32_t parse_u32(std::string_view key, std::string_view v) {
  const auto x = parse_uint(key, v);
  if (x > UINT32_MAX) throw Error(Errc::InvalidArgument, std::string(key) + " out of range");
  return static_cast<std::uint32_t>(x);
}

Wei governance_value(GovernedParam param, std::string_view text) {
  if (param == GovernedParam::SlashAmount || param == GovernedParam::MinStake) return eth(text);
  return parse_fixed(text, 0);
}

std::string governance_value_text(const GovernanceProposal& g) {
  if (g.param == GovernedParam::SlashAmount || g.param == GovernedParam::MinStake) {
    return format_fixed(g.value, kWeiDecimals);
  }
  return to_string_i128(g.value);
}

ChainConfig parse_chain(std::string_view spec) {
  const auto parts = split(spec, ':');
  if (parts.size() != 4) throw Error(Errc::InvalidArgument, "chain spec must be id:kind:block_time_s:finality_blocks");
  ChainConfig c;
  c.chain_id = parts[0];
  c.kind = parse_chain_kind(parts[1]);
  c.block_time = seconds(parts[2]);
  c.finality_blocks = parse_u32("finality_blocks", parts[3]);
  c.gas_table = c.kind == ChainKind::L1 ? l1_gas_table() : l2_gas_table();
  return c;
}

}  // namespace

void apply_setting(ScenarioConfig& c, std::string_view key, std::string_view value) {
  const std::string v = trim(value);
  if (key == "seed") c.seed = parse_uint(key, v);
  else if (key == "registry_size") c.registry_size = parse_u32(key, v);
  else if (key == "committee_size") c.sortition.committee_size = parse_u32(key, v);
  else if (key == "quorum") c.quorum = parse_u32(key, v);
  else if (key == "epochs") c.epochs = parse_uint(key, v);
  else if (key == "sortition_mode") c.sortition.mode = parse_sortition_mode(v);
  else if (key == "security_bits") c.sortition.security_bits = parse_u32(key, v);
  else if (key == "epoch_interval_s") c.timing.epoch_interval = seconds(v);
  else if (key == "delta_net_min_s") c.timing.delta_net_min = seconds(v);
  else if (key == "delta_net_max_s") c.timing.delta_net_max = seconds(v);
  else if (key == "proving_model") {
    if (v == "constant") c.timing.proving.kind = ProvingModel::Kind::Constant;
    else if (v == "linear") c.timing.proving.kind = ProvingModel::Kind::Linear;
    else throw Error(Errc::InvalidArgument, "proving_model must be constant or linear");
  }
  else if (key == "t_prove_s") c.timing.proving.constant_seconds = static_cast<double>(seconds(v)) / 1e6;
  else if (key == "proving_intercept_s") c.timing.proving.intercept_seconds = static_cast<double>(seconds(v)) / 1e6;
  else if (key == "proving_s_per_kib") c.timing.proving.seconds_per_kib = static_cast<double>(parse_fixed(v, 9)) / 1e9;
  else if (key == "beacon_period_s") c.beacon_period_seconds = parse_uint(key, v);
  else if (key == "beacon_min_entropy_bits") c.beacon_min_entropy_bits = parse_u32(key, v);
  else if (key == "beacon_seed") {
    if (v == "derived") c.beacon_seed.reset();
    else c.beacon_seed = array_from_hex<32>(v);
  }
  else if (key == "chains") {
    c.chains.clear();
    for (const auto& spec : split(v, ',')) c.chains.push_back(parse_chain(spec));
  }
  else if (key.starts_with("gas.")) {
    const auto parts = split(key.substr(4), '.');
    if (parts.size() != 2) throw Error(Errc::InvalidArgument, "gas keys look like gas.<chain>.<op>");
    const auto it = std::find_if(c.chains.begin(), c.chains.end(),
                                 [&](const auto& ch) { return ch.chain_id == parts[0]; });
    if (it == c.chains.end()) throw Error(Errc::InvalidArgument, "gas key for unknown chain '" + parts[0] + "'");
    it->gas_table[parse_gas_op(parts[1])] = parse_uint(key, v);
  }
  else if (key == "adversary_ids") {
    c.adversary.controlled.clear();
    for (const auto& id : split(v, ',')) c.adversary.controlled.push_back(parse_u32(key, id));
  }
  else if (key == "adversary_behavior") c.adversary.behavior = parse_adversary_behavior(v);
  else if (key == "fraud_period") c.adversary.fraud_period = parse_uint(key, v);
  else if (key == "min_stake_eth") c.min_stake = eth(v);
  else if (key == "initial_stake_eth") c.initial_stake = eth(v);
  else if (key == "s_cut_eth") c.slash_amount = eth(v);
  else if (key == "gov_delay_epochs") c.governance_delay = parse_u32(key, v);
  else if (key == "governance") {
    c.governance.clear();
    for (const auto& item : split(v, ';')) {
      const auto colon = item.find(':');
      const auto at = item.find('@');
      if (colon == std::string::npos || at == std::string::npos || at < colon) {
        throw Error(Errc::InvalidArgument, "governance entries look like param:value@epoch");
      }
      GovernanceProposal g;
      g.param = parse_governed_param(trim(std::string_view(item).substr(0, colon)));
      g.value = governance_value(g.param, trim(std::string_view(item).substr(colon + 1, at - colon - 1)));
      g.at_epoch = parse_uint("governance epoch", trim(std::string_view(item).substr(at + 1)));
      c.governance.push_back(g);
    }
  }
  else if (key == "value_min") c.value_range.min = price(v);
  else if (key == "value_max") c.value_range.max = price(v);
  else if (key == "truth_price") c.truth_price = price(v);
  else if (key == "noise_bps") c.noise_bps = parse_u32(key, v);
  else throw Error(Errc::InvalidArgument, "unknown key '" + std::string(key) + "'");
}

ScenarioConfig parse_scenario(std::istream& in) {
  ScenarioConfig config;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    const std::string body = trim(std::string_view(line).substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw Error(Errc::ConfigParse, "line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    try {
      apply_setting(config, key, std::string_view(body).substr(eq + 1));
    } catch (const Error& e) {
      throw Error(Errc::ConfigParse, "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return config;
}

ScenarioConfig parse_scenario_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_scenario(in);
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ConfigParse, "cannot open config '" + path + "'");
  return parse_scenario(in);
}

std::string canonical_text(const ScenarioConfig& c) {
  std::ostringstream out;
  auto kv = [&](std::string_view k, const std::string& v) { out << k << " = " << v << '\n'; };
  auto join_ids = [](const std::vector<ReporterId>& ids) {
    std::string s;
    for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? "," : "") + std::to_string(ids[i]);
    return s;
  };
  auto secs = [](Micros us) { return format_fixed(us, 6); };
  auto dsecs = [](double s) { return format_fixed(static_cast<Wei>(std::llround(s * 1e6)), 6); };

  kv("seed", std::to_string(c.seed));
  kv("registry_size", std::to_string(c.registry_size));
  kv("committee_size", std::to_string(c.sortition.committee_size));
  kv("quorum", std::to_string(c.quorum));
  kv("epochs", std::to_string(c.epochs));
  kv("sortition_mode", std::string(to_string(c.sortition.mode)));
  kv("security_bits", std::to_string(c.sortition.security_bits));
  kv("epoch_interval_s", secs(c.timing.epoch_interval));
  kv("delta_net_min_s", secs(c.timing.delta_net_min));
  kv("delta_net_max_s", secs(c.timing.delta_net_max));
  kv("proving_model", c.timing.proving.kind == ProvingModel::Kind::Constant ? "constant" : "linear");
  kv("t_prove_s", dsecs(c.timing.proving.constant_seconds));
  kv("proving_intercept_s", dsecs(c.timing.proving.intercept_seconds));
  kv("proving_s_per_kib",
     format_fixed(static_cast<Wei>(std::llround(c.timing.proving.seconds_per_kib * 1e9)), 9));
  kv("beacon_period_s", std::to_string(c.beacon_period_seconds));
  kv("beacon_min_entropy_bits", std::to_string(c.beacon_min_entropy_bits));
  kv("beacon_seed", c.beacon_seed ? to_hex(*c.beacon_seed) : "derived");
  std::string chains;
  for (std::size_t i = 0; i < c.chains.size(); ++i) {
    const auto& ch = c.chains[i];
    chains += (i ? "," : "") + ch.chain_id + ":" + std::string(to_string(ch.kind)) + ":" +
              secs(ch.block_time) + ":" + std::to_string(ch.finality_blocks);
  }
  kv("chains", chains);
  for (const auto& ch : c.chains) {
    for (const auto& [op, gas] : ch.gas_table) {
      kv("gas." + ch.chain_id + "." + std::string(to_string(op)), std::to_string(gas));
    }
  }
  kv("adversary_ids", join_ids(c.adversary.controlled));
  kv("adversary_behavior", std::string(to_string(c.adversary.behavior)));
  kv("fraud_period", std::to_string(c.adversary.fraud_period));
  kv("min_stake_eth", format_fixed(c.min_stake, kWeiDecimals));
  kv("initial_stake_eth", format_fixed(c.initial_stake, kWeiDecimals));
  kv("s_cut_eth", format_fixed(c.slash_amount, kWeiDecimals));
  kv("gov_delay_epochs", std::to_string(c.governance_delay));
  std::string gov;
  for (std::size_t i = 0; i < c.governance.size(); ++i) {
    const auto& g = c.governance[i];
    gov += (i ? ";" : "") + std::string(to_string(g.param)) + ":" + governance_value_text(g) + "@" +
           std::to_string(g.at_epoch);
  }
  kv("governance", gov);
  kv("value_min", format_fixed(c.value_range.min, kPriceDecimals));
  kv("value_max", format_fixed(c.value_range.max, kPriceDecimals));
  kv("truth_price", format_fixed(c.truth_price, kPriceDecimals));
  kv("noise_bps", std::to_string(c.noise_bps));
  return out.str();
}

}  // namespace vzor
