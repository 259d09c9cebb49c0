#include "vzor/netsim.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>

#include "json.hpp"
#include "vzor/crypto.hpp"
#include "vzor/errors.hpp"
#include "vzor/packet.hpp"
#include "vzor/rng.hpp"

namespace vzor {

using json = nlohmann::json;

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::PulseEmit: return "PulseEmit";
    case EventKind::CommitteeDraw: return "CommitteeDraw";
    case EventKind::ObservationReady: return "ObservationReady";
    case EventKind::PacketBuilt: return "PacketBuilt";
    case EventKind::PacketDelivered: return "PacketDelivered";
    case EventKind::FraudRelayed: return "FraudRelayed";
    case EventKind::SlashApplied: return "SlashApplied";
    case EventKind::GovernanceEffective: return "GovernanceEffective";
  }
  return "unknown";
}

bool EpochRecord::all_accepted() const {
  return !chains.empty() &&
         std::all_of(chains.begin(), chains.end(), [](const auto& c) { return c.delivered && c.accepted; });
}

namespace {

std::string wei_text(Wei w) { return format_fixed(w, kWeiDecimals); }

Digest reporter_key_seed(std::uint64_t seed, ReporterId id) {
  ByteWriter w;
  w.u64(seed).u32(id);
  return sha256_tagged("VZOR/reporter-key/v1", w.bytes());
}

// Serialized proof size for a revealed witness with `entries` entries.
std::size_t proof_bytes(std::size_t entries) { return 32 + 32 + 4 + 1 + 8 + 32 + 4 + 76 * entries; }

json ids_json(const std::vector<ReporterId>& ids) {
  json a = json::array();
  for (const auto id : ids) a.push_back(id);
  return a;
}

class Simulator {
 public:
  explicit Simulator(const ScenarioConfig& config);
  RunTrace run();

 private:
  struct EpochState {
    std::optional<Committee> committee;
    GovernedParams params;
    AggregationParams agg;
    std::vector<SignedObservation> observations;
    std::set<ReporterId> honest;
    std::optional<OraclePacket> packet;
    std::size_t deliveries = 0;
  };

  void schedule(Micros at, EventKind kind, EventPayload payload);
  void emit(json record);
  Micros draw_delay();
  Price honest_value();
  const ReporterSecret& secret_of(ReporterId id) const { return secrets_.at(id); }

  void on_pulse(const PulsePayload& p);
  void on_draw(const EpochPayload& p);
  void on_observation(const ObservationPayload& p);
  void on_build(const EpochPayload& p);
  void on_delivery(const DeliveryPayload& p);
  void on_fraud_relay(const FraudPayload& p);
  void on_slash(const FraudPayload& p);
  void on_governance(const GovernancePayload& p);

  const ScenarioConfig& cfg_;
  RunTrace trace_;
  HashChainBeacon beacon_;
  std::vector<ReporterSecret> secrets_;
  KeyDirectory directory_;
  RestakingHub hub_;
  std::vector<ChainSim> chains_;
  std::size_t hub_chain_ = 0;
  DeterministicRng delays_;
  DeterministicRng noise_;
  DeterministicRng adversary_;
  std::set<ReporterId> controlled_;
  std::priority_queue<SimEvent, std::vector<SimEvent>, std::greater<>> queue_;
  std::uint64_t next_sequence_ = 0;
  Micros now_ = 0;
  std::uint64_t latest_pulse_ = 0;
  std::vector<EpochState> states_;
};

Simulator::Simulator(const ScenarioConfig& config)
    : cfg_(config),
      beacon_(config.beacon_params()),
      hub_(config.genesis_params(), config.governance_delay),
      delays_(config.seed, "delays"),
      noise_(config.seed, "noise"),
      adversary_(config.seed, "adversary"),
      controlled_(config.adversary.controlled.begin(), config.adversary.controlled.end()) {
  trace_.config = config;
  for (const auto& c : cfg_.chains) chains_.emplace_back(c);
  for (std::size_t i = 1; i < chains_.size(); ++i) {
    if (chains_[i].config().block_time < chains_[hub_chain_].config().block_time) hub_chain_ = i;
  }
  for (ReporterId id = 0; id < cfg_.registry_size; ++id) {
    auto [identity, secret] = vrf_keygen(id, reporter_key_seed(cfg_.seed, id));
    directory_.emplace(id, identity.public_key);
    secrets_.push_back(secret);
    hub_.register_reporter(id, cfg_.initial_stake);
  }
  trace_.initial_stakes = hub_.stakes();
  trace_.selection_counts.assign(cfg_.registry_size, 0);
  trace_.epochs.resize(cfg_.epochs);
  states_.resize(cfg_.epochs);
  for (Epoch t = 0; t < cfg_.epochs; ++t) {
    trace_.epochs[t].epoch = t;
    trace_.epochs[t].start = static_cast<Micros>(t) * cfg_.timing.epoch_interval;
    for (const auto& c : cfg_.chains) {
      ChainOutcome outcome;
      outcome.chain_id = c.chain_id;
      trace_.epochs[t].chains.push_back(outcome);
    }
  }
}

void Simulator::schedule(Micros at, EventKind kind, EventPayload payload) {
  if (at < now_) throw std::logic_error("event scheduled in the past");
  queue_.push(SimEvent{at, next_sequence_++, kind, std::move(payload)});
}

void Simulator::emit(json record) {
  record["t_us"] = now_;
  trace_.log.push_back(record.dump());
}

Micros Simulator::draw_delay() {
  return static_cast<Micros>(delays_.uniform(static_cast<std::uint64_t>(cfg_.timing.delta_net_min),
                                             static_cast<std::uint64_t>(cfg_.timing.delta_net_max)));
}

Price Simulator::honest_value() {
  const Price noise = static_cast<Price>(static_cast<Wei>(cfg_.truth_price) * cfg_.noise_bps / 10'000);
  return cfg_.truth_price + noise_.uniform_signed(-noise, noise);
}

RunTrace Simulator::run() {
  json header = {{"type", "header"}, {"format", "vzor-trace/1"}, {"config", canonical_text(cfg_)}};
  emit(header);
  json reg = {{"type", "registry"}, {"hub_chain", cfg_.chains[hub_chain_].chain_id}};
  json reporters = json::array();
  for (const auto& s : secrets_) {
    reporters.push_back({{"id", s.id}, {"public_key", to_hex(s.public_key)},
                         {"stake", wei_text(hub_.stake_of(s.id))}});
  }
  reg["reporters"] = reporters;
  emit(reg);

  schedule(0, EventKind::PulseEmit, PulsePayload{0});
  schedule(0, EventKind::CommitteeDraw, EpochPayload{0});

  while (!queue_.empty()) {
    SimEvent ev = queue_.top();
    queue_.pop();
    now_ = ev.fire_at;
    switch (ev.kind) {
      case EventKind::PulseEmit: on_pulse(std::get<PulsePayload>(ev.payload)); break;
      case EventKind::CommitteeDraw: on_draw(std::get<EpochPayload>(ev.payload)); break;
      case EventKind::ObservationReady: on_observation(std::get<ObservationPayload>(ev.payload)); break;
      case EventKind::PacketBuilt: on_build(std::get<EpochPayload>(ev.payload)); break;
      case EventKind::PacketDelivered: on_delivery(std::get<DeliveryPayload>(ev.payload)); break;
      case EventKind::FraudRelayed: on_fraud_relay(std::get<FraudPayload>(ev.payload)); break;
      case EventKind::SlashApplied: on_slash(std::get<FraudPayload>(ev.payload)); break;
      case EventKind::GovernanceEffective: on_governance(std::get<GovernancePayload>(ev.payload)); break;
    }
  }
  trace_.end_time = now_;

  json stakes = json::array();
  for (const auto& [id, stake] : hub_.stakes()) stakes.push_back(wei_text(stake));
  emit({{"type", "ledger_final"}, {"stakes", stakes}, {"burned", wei_text(hub_.burned_total())}});

  for (const auto& rec : trace_.epochs) {
    json chains = json::array();
    for (const auto& c : rec.chains) {
      chains.push_back({{"chain", c.chain_id}, {"delivered", c.delivered}, {"accepted", c.accepted},
                        {"gas", c.gas}, {"delivered_at_us", c.delivered_at},
                        {"final_at_us", c.final_at}, {"reason", c.reason}});
    }
    json lifecycle = json::array();
    for (const auto& s : rec.lifecycle) lifecycle.push_back(json::array({s.step, s.at}));
    json e = {{"type", "epoch"},
              {"epoch", rec.epoch},
              {"start_us", rec.start},
              {"pulse_index", rec.pulse_index},
              {"pulse_digest", to_hex(rec.pulse_digest)},
              {"committee", ids_json(rec.committee_ids)},
              {"median", rec.median ? json(*rec.median) : json()},
              {"packet_digest", rec.packet_digest ? json(to_hex(*rec.packet_digest)) : json()},
              {"chains", chains},
              {"prove_time_us", rec.prove_time},
              {"e2e_latency_us", rec.e2e_latency ? json(*rec.e2e_latency) : json()},
              {"fraud_injected", rec.fraud_injected},
              {"slash_latency_us", rec.slash_latency ? json(*rec.slash_latency) : json()},
              {"slashed", ids_json(rec.slashed_ids)},
              {"honest_min", rec.honest_min ? json(*rec.honest_min) : json()},
              {"honest_max", rec.honest_max ? json(*rec.honest_max) : json()},
              {"valid_observations", rec.valid_observations},
              {"lifecycle", lifecycle},
              {"error", rec.error}};
    emit(e);
  }

  trace_.final_stakes = hub_.stakes();
  trace_.burned_total = hub_.burned_total();
  for (const auto& c : chains_) {
    trace_.chain_gas[c.config().chain_id] = c.total_gas();
    trace_.verify_gas_per_packet[c.config().chain_id] = c.gas_cost(GasOp::VerifyProof);
  }
  trace_.pulses.assign(beacon_.emitted().begin(), beacon_.emitted().end());
  return std::move(trace_);
}

void Simulator::on_pulse(const PulsePayload& p) {
  const Pulse pulse = beacon_.pulse_at(p.pulse_index);
  latest_pulse_ = p.pulse_index;
  emit({{"type", "pulse"},
        {"index", pulse.index},
        {"timestamp", pulse.timestamp},
        {"value", to_hex(pulse.value)},
        {"prev_digest", to_hex(pulse.prev_digest)},
        {"chain_digest", to_hex(pulse.chain_digest)}});
  const Micros period = static_cast<Micros>(cfg_.beacon_period_seconds) * kMicrosPerSecond;
  const Micros last_epoch_start = static_cast<Micros>(cfg_.epochs - 1) * cfg_.timing.epoch_interval;
  const Micros next = static_cast<Micros>(p.pulse_index + 1) * period;
  if (next <= last_epoch_start) schedule(next, EventKind::PulseEmit, PulsePayload{p.pulse_index + 1});
}

void Simulator::on_draw(const EpochPayload& p) {
  const Epoch t = p.epoch;
  if (t + 1 < cfg_.epochs) {
    schedule(static_cast<Micros>(t + 1) * cfg_.timing.epoch_interval, EventKind::CommitteeDraw,
             EpochPayload{t + 1});
  }
  EpochRecord& rec = trace_.epochs[t];
  EpochState& st = states_[t];

  for (const auto& g : cfg_.governance) {
    if (g.at_epoch != t) continue;
    const GovernanceUpdate u = hub_.propose_update(g.param, g.value, t);
    const auto gas = chains_[hub_chain_].charge(GasOp::GovernanceUpdate);
    emit({{"type", "governance_proposed"},
          {"param", std::string(to_string(u.param))},
          {"value", to_string_i128(u.value)},
          {"proposed_at", u.proposed_at},
          {"effective_epoch", u.effective_epoch},
          {"chain", chains_[hub_chain_].config().chain_id},
          {"gas", gas}});
    if (u.effective_epoch < cfg_.epochs) {
      schedule(static_cast<Micros>(u.effective_epoch) * cfg_.timing.epoch_interval,
               EventKind::GovernanceEffective, GovernancePayload{u});
    }
  }

  json stakes = json::array();
  for (const auto& [id, stake] : hub_.stakes()) stakes.push_back(wei_text(stake));
  emit({{"type", "ledger"}, {"epoch", t}, {"stakes", stakes}, {"burned", wei_text(hub_.burned_total())}});

  st.params = hub_.effective_params(t);
  st.agg = cfg_.aggregation(st.params);
  const Pulse pulse = beacon_.pulse_at(latest_pulse_);
  rec.pulse_index = pulse.index;
  rec.pulse_digest = pulse.chain_digest;
  rec.lifecycle.push_back({1, now_});
  rec.lifecycle.push_back({2, now_});

  json params = {{"f_min", st.params.quorum},
                 {"n", st.params.committee_size},
                 {"s_cut", wei_text(st.params.slash_amount)},
                 {"S_min", wei_text(st.params.min_stake)}};

  std::vector<ReporterSecret> active;
  for (const auto& s : secrets_) {
    if (hub_.is_active(s.id)) active.push_back(s);
  }
  Committee committee;
  try {
    const auto scored = evaluate_registry(active, pulse, t);
    committee = select_committee(pulse, t, scored, cfg_.sortition_for(st.params));
  } catch (const Error& e) {
    rec.error = std::string(to_string(e.code())) + ": " + e.what();
    emit({{"type", "committee"}, {"epoch", t}, {"pulse_index", pulse.index}, {"params", params},
          {"members", json::array()}, {"error", rec.error}});
    return;
  }

  json members = json::array();
  for (const auto& m : committee.members) {
    members.push_back({{"id", m.identity.id}, {"vrf_value", to_hex(m.output.value)},
                       {"vrf_proof", to_hex(m.output.proof)}});
    ++trace_.selection_counts.at(m.identity.id);
  }
  emit({{"type", "committee"}, {"epoch", t}, {"pulse_index", pulse.index}, {"params", params},
        {"members", members}, {"error", ""}});
  rec.committee_ids = committee.ids();

  std::size_t expected = 0;
  for (const auto& m : committee.members) {
    const ReporterId id = m.identity.id;
    const bool adversarial = controlled_.contains(id);
    if (adversarial && cfg_.adversary.behavior == AdversaryBehavior::Withhold) continue;
    Price value;
    bool honest = true;
    if (adversarial && cfg_.adversary.behavior == AdversaryBehavior::WrongValue) {
      value = adversary_.uniform_signed(cfg_.value_range.min, cfg_.value_range.max);
      honest = false;
    } else {
      value = honest_value();
    }
    const SignedObservation obs = sign_observation(secret_of(id), value, t, cfg_.value_range);
    schedule(now_ + draw_delay(), EventKind::ObservationReady, ObservationPayload{t, obs, honest});
    ++expected;
  }
  st.committee = std::move(committee);

  const bool fraud = cfg_.adversary.injects_fraud(t);
  const std::size_t witness_entries = fraud ? std::min<std::size_t>(expected, st.agg.quorum) : expected;
  rec.prove_time = cfg_.timing.prove_time(proof_bytes(witness_entries));
  schedule(now_ + cfg_.timing.delta_net_max + rec.prove_time, EventKind::PacketBuilt, EpochPayload{t});
}

void Simulator::on_observation(const ObservationPayload& p) {
  EpochState& st = states_[p.epoch];
  st.observations.push_back(p.observation);
  if (p.honest) st.honest.insert(p.observation.reporter_id);
  emit({{"type", "observation"},
        {"epoch", p.epoch},
        {"reporter", p.observation.reporter_id},
        {"value", p.observation.value},
        {"signature", to_hex(p.observation.signature)},
        {"honest", p.honest}});
}

void Simulator::on_build(const EpochPayload& p) {
  const Epoch t = p.epoch;
  EpochRecord& rec = trace_.epochs[t];
  EpochState& st = states_[t];
  rec.lifecycle.push_back({3, rec.start + cfg_.timing.delta_net_max});

  const bool fraud = cfg_.adversary.injects_fraud(t);
  OraclePacket packet;
  try {
    if (fraud) {
      // Dishonest aggregator: quorum-sized witness, inflated median.
      std::vector<SignedObservation> valid;
      for (const auto& o : st.observations) {
        const auto* m = st.committee->find(o.reporter_id);
        if (m && verify_observation(m->identity.public_key, o, st.agg.value_range)) valid.push_back(o);
      }
      std::sort(valid.begin(), valid.end(),
                [](const auto& a, const auto& b) { return a.reporter_id < b.reporter_id; });
      if (valid.size() < st.agg.quorum) {
        throw Error(Errc::QuorumNotMet, std::to_string(valid.size()) + " valid observations");
      }
      valid.resize(st.agg.quorum);
      const Witness witness = make_witness(valid, *st.committee);
      std::vector<Price> values;
      for (const auto& e : witness.entries) values.push_back(e.value);
      const Price true_median = median(values);
      packet.epoch = t;
      packet.median = true_median + std::max<Price>(1, true_median / 10);
      packet.proof = prove(witness, packet.median, *st.committee, st.agg);
    } else {
      packet = build_packet(st.observations, *st.committee, st.agg);
    }
  } catch (const Error& e) {
    rec.error = std::string(to_string(e.code())) + ": " + e.what();
    emit({{"type", "packet_failed"}, {"epoch", t}, {"error", rec.error}});
    return;
  }

  rec.fraud_injected = fraud;
  rec.lifecycle.push_back({4, now_});
  rec.lifecycle.push_back({5, now_});
  rec.median = packet.median;
  rec.packet_digest = packet_digest(packet);
  const auto& entries = packet.proof.revealed_witness->entries;
  rec.valid_observations = entries.size();
  for (const auto& e : entries) {
    if (!st.honest.contains(e.reporter_id)) continue;
    rec.honest_min = rec.honest_min ? std::min(*rec.honest_min, e.value) : e.value;
    rec.honest_max = rec.honest_max ? std::max(*rec.honest_max, e.value) : e.value;
  }
  emit({{"type", "packet_built"},
        {"epoch", t},
        {"packet", to_hex(encode(packet))},
        {"packet_digest", to_hex(*rec.packet_digest)},
        {"fraud_injected", fraud}});
  st.packet = std::move(packet);
  for (std::size_t k = 0; k < chains_.size(); ++k) {
    schedule(now_ + draw_delay(), EventKind::PacketDelivered, DeliveryPayload{t, k});
  }
}

void Simulator::on_delivery(const DeliveryPayload& p) {
  EpochRecord& rec = trace_.epochs[p.epoch];
  EpochState& st = states_[p.epoch];
  ChainSim& chain = chains_[p.chain];
  const Receipt r = chain.submit_packet(*st.packet, *st.committee, directory_, st.agg, now_);
  emit({{"type", "receipt"},
        {"epoch", r.epoch},
        {"chain", r.chain_id},
        {"accepted", r.result.accepted},
        {"reason", r.result.failure.to_string()},
        {"gas", r.gas_used},
        {"block_height", r.block_height},
        {"final_at_us", r.final_at},
        {"packet_digest", to_hex(r.packet_digest)},
        {"duplicate", r.duplicate}});

  ChainOutcome& out = rec.chains[p.chain];
  out.delivered = true;
  out.accepted = r.result.accepted;
  out.gas = r.gas_used;
  out.delivered_at = r.timestamp;
  out.final_at = r.final_at;
  out.reason = r.result.failure.to_string();

  if (!r.result.accepted) {
    emit({{"type", "fraud_event"},
          {"epoch", r.epoch},
          {"chain", r.chain_id},
          {"packet_digest", to_hex(r.packet_digest)},
          {"reason", r.result.failure.to_string()}});
    if (!rec.fraud_emitted_at) {
      // one rejection settles the verification outcome; slashing can follow
      // before slower chains finish
      rec.fraud_emitted_at = now_;
      rec.lifecycle.push_back({6, now_});
    }
    schedule(now_ + draw_delay(), EventKind::FraudRelayed,
             FraudPayload{p.epoch, p.chain, r.packet_digest, now_});
  }

  if (++st.deliveries == chains_.size() && rec.all_accepted()) {
    Micros verified = 0;
    for (const auto& c : rec.chains) verified = std::max(verified, c.final_at);
    rec.e2e_latency = verified - rec.start;
    rec.lifecycle.push_back({6, verified});
    rec.lifecycle.push_back({7, verified});  // nothing to slash; the epoch settles here
  }
}

void Simulator::on_fraud_relay(const FraudPayload& p) {
  ChainSim& hub_chain = chains_[hub_chain_];
  const auto gas = hub_chain.charge(GasOp::SubmitFraud);
  emit({{"type", "fraud_relayed"},
        {"epoch", p.epoch},
        {"origin_chain", chains_[p.origin_chain].config().chain_id},
        {"packet_digest", to_hex(p.packet_digest)},
        {"hub_chain", hub_chain.config().chain_id},
        {"gas", gas}});
  const Micros tick = hub_chain.config().block_time;
  const Micros slash_at = (now_ + tick - 1) / tick * tick;
  schedule(slash_at, EventKind::SlashApplied, p);
}

void Simulator::on_slash(const FraudPayload& p) {
  EpochRecord& rec = trace_.epochs[p.epoch];
  EpochState& st = states_[p.epoch];
  const FraudProof fraud = make_fraud_proof(*st.packet, chains_[p.origin_chain].config().chain_id);
  const SlashReport report = hub_.adjudicate(fraud, *st.committee, directory_, st.agg);

  json cuts = json::array();
  for (const auto c : report.cuts) cuts.push_back(wei_text(c));
  emit({{"type", "slash_report"},
        {"epoch", report.epoch},
        {"packet_digest", to_hex(report.packet_digest)},
        {"origin_chain", fraud.origin_chain},
        {"outcome", std::string(to_string(report.outcome))},
        {"verify_failure", report.verify_failure.to_string()},
        {"slashed", ids_json(report.slashed)},
        {"cuts", cuts},
        {"skipped", ids_json(report.skipped)},
        {"per_reporter_cut", wei_text(report.per_reporter_cut)},
        {"total_cut", wei_text(report.total_cut)}});

  if (report.applied()) {
    rec.slash_latency = now_ - rec.fraud_emitted_at.value_or(now_);
    rec.slashed_ids = report.slashed;
    rec.lifecycle.push_back({7, now_});
    trace_.slash_reports.push_back(report);
  }
}

void Simulator::on_governance(const GovernancePayload& p) {
  emit({{"type", "governance_effective"},
        {"epoch", p.update.effective_epoch},
        {"param", std::string(to_string(p.update.param))},
        {"value", to_string_i128(p.update.value)}});
}

}  // namespace

RunTrace run(const ScenarioConfig& scenario) {
  scenario.validate();
  Simulator sim(scenario);
  return sim.run();
}

Micros liveness_bound(const ScenarioConfig& config, Micros prove_time) {
  Micros tau_f = 0;
  for (const auto& c : config.chains) tau_f = std::max(tau_f, c.finality_time());
  const Micros slack = config.timing.delta_net_max;
  return tau_f + config.timing.delta_net_max + prove_time + slack;
}

LivenessReport check_liveness(const RunTrace& trace, const TimingModel& timing) {
  ScenarioConfig cfg = trace.config;
  cfg.timing = timing;
  LivenessReport report;
  report.slack = timing.delta_net_max;
  for (const auto& rec : trace.epochs) {
    if (rec.fraud_injected) continue;
    ++report.checked;
    const Micros bound = liveness_bound(cfg, rec.prove_time);
    report.max_bound = std::max(report.max_bound, bound);
    if (!rec.e2e_latency || *rec.e2e_latency > bound) report.violations.push_back(rec.epoch);
  }
  return report;
}

std::vector<Epoch> safety_violations(const RunTrace& trace) {
  std::vector<Epoch> out;
  for (const auto& rec : trace.epochs) {
    if (!rec.all_accepted() || !rec.median) continue;
    if (!rec.honest_min || *rec.median < *rec.honest_min || *rec.median > *rec.honest_max) {
      out.push_back(rec.epoch);
    }
  }
  return out;
}

MetricsSummary metrics(const RunTrace& trace) {
  MetricsSummary m;
  m.epochs = trace.epochs.size();
  m.duration_s = to_seconds(static_cast<Micros>(trace.epochs.size()) * trace.config.timing.epoch_interval);
  std::vector<double> latencies;
  for (const auto& rec : trace.epochs) {
    if (rec.packet_digest) ++m.packets_built;
    if (rec.fraud_injected) ++m.fraud_injected;
    if (rec.all_accepted()) ++m.accepted_packets;
    if (rec.e2e_latency) latencies.push_back(to_seconds(*rec.e2e_latency));
    if (rec.slash_latency) m.slash_latencies_s.push_back(to_seconds(*rec.slash_latency));
  }
  if (!latencies.empty()) {
    double sum = 0;
    for (const double l : latencies) sum += l;
    m.mean_latency_s = sum / static_cast<double>(latencies.size());
    double var = 0;
    for (const double l : latencies) var += (l - m.mean_latency_s) * (l - m.mean_latency_s);
    m.sd_latency_s = std::sqrt(var / static_cast<double>(latencies.size()));
  }
  if (!m.slash_latencies_s.empty()) {
    double sum = 0;
    for (const double l : m.slash_latencies_s) sum += l;
    m.mean_slash_latency_s = sum / static_cast<double>(m.slash_latencies_s.size());
  }
  m.slash_reports = trace.slash_reports.size();
  if (m.duration_s > 0) {
    m.throughput_pps = static_cast<double>(m.accepted_packets) / m.duration_s;
    m.epoch_rate = static_cast<double>(m.epochs) / m.duration_s;
  }
  m.chain_gas = trace.chain_gas;
  m.verify_gas_per_packet = trace.verify_gas_per_packet;
  for (const auto c : trace.selection_counts) {
    m.selection_frequency.push_back(m.epochs ? static_cast<double>(c) / static_cast<double>(m.epochs) : 0.0);
  }
  m.safety_violations = safety_violations(trace).size();
  m.liveness_violations = check_liveness(trace, trace.config.timing).violations.size();
  return m;
}

}  // namespace vzor
