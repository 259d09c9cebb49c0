#include "vzor/trace.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "vzor/crypto.hpp"
#include "vzor/errors.hpp"

namespace vzor {

using json = nlohmann::json;

namespace {

std::string join_ids(const std::vector<ReporterId>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(ids[i]);
  }
  return out;
}

std::string seconds_text(Micros us) { return format_fixed(us, 6); }

}  // namespace

std::string trace_text(const RunTrace& trace) {
  std::string out;
  for (const auto& line : trace.log) {
    out += line;
    out += '\n';
  }
  return out;
}

std::string epochs_csv(const RunTrace& trace) {
  std::ostringstream out;
  out << "epoch,committee_ids,median";
  for (const auto& c : trace.config.chains) out << ",accepted_" << c.chain_id;
  for (const auto& c : trace.config.chains) out << ",gas_" << c.chain_id;
  out << ",e2e_latency_s,fraud_injected,slash_latency_s,slashed_ids\n";
  for (const auto& rec : trace.epochs) {
    out << rec.epoch << ',' << join_ids(rec.committee_ids) << ',';
    if (rec.median) out << format_fixed(*rec.median, kPriceDecimals);
    for (const auto& c : rec.chains) out << ',' << (c.delivered ? (c.accepted ? "1" : "0") : "");
    for (const auto& c : rec.chains) {
      out << ',';
      if (c.delivered) out << c.gas;
    }
    out << ',';
    if (rec.e2e_latency) out << seconds_text(*rec.e2e_latency);
    out << ',' << (rec.fraud_injected ? 1 : 0) << ',';
    if (rec.slash_latency) out << seconds_text(*rec.slash_latency);
    out << ',' << join_ids(rec.slashed_ids) << '\n';
  }
  return out.str();
}

std::string metrics_json(const RunTrace& trace) {
  const MetricsSummary m = metrics(trace);
  json j = {{"epochs", m.epochs},
            {"packets_built", m.packets_built},
            {"accepted_packets", m.accepted_packets},
            {"fraud_injected", m.fraud_injected},
            {"slash_reports", m.slash_reports},
            {"duration_s", m.duration_s},
            {"mean_latency_s", m.mean_latency_s},
            {"sd_latency_s", m.sd_latency_s},
            {"throughput_packets_per_s", m.throughput_pps},
            {"epoch_rate_per_s", m.epoch_rate},
            {"slash_latencies_s", m.slash_latencies_s},
            {"mean_slash_latency_s", m.mean_slash_latency_s},
            {"chain_gas", m.chain_gas},
            {"verify_gas_per_packet", m.verify_gas_per_packet},
            {"selection_frequency", m.selection_frequency},
            {"safety_violations", m.safety_violations},
            {"liveness_violations", m.liveness_violations},
            {"burned_wei", to_string_i128(trace.burned_total)}};
  return j.dump(2) + "\n";
}

std::string pulses_csv(const RunTrace& trace) {
  std::ostringstream out;
  out << "index,timestamp,value,prev_digest,chain_digest\n";
  write_pulse_file(out, trace.pulses);
  return out.str();
}

namespace {

struct CorruptTrace : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <std::size_t N>
std::array<std::uint8_t, N> hex_at(const json& j, const char* key) {
  return array_from_hex<N>(j.at(key).get<std::string>());
}

std::string wei_text(Wei w) { return format_fixed(w, kWeiDecimals); }

std::vector<ReporterId> id_list(const json& j) {
  std::vector<ReporterId> out;
  for (const auto& v : j) out.push_back(v.get<ReporterId>());
  return out;
}

class Replayer {
 public:
  TraceVerification run(std::istream& in);

 private:
  struct EpochReplay {
    std::optional<Committee> committee;
    GovernedParams params;
    std::optional<OraclePacket> packet;
    Digest digest{};
    bool fraud_injected = false;
    std::map<std::string, Receipt> receipts;
    std::multiset<std::string> relayed;  // origin chains awaiting adjudication
    std::optional<SlashReport> applied;
  };

  void dispatch(const json& r);
  void mismatch(std::optional<Epoch> epoch, std::string what);
  EpochReplay& epoch_state(const json& r) { return epochs_[r.at("epoch").get<Epoch>()]; }
  ChainSim* chain(const std::string& id);
  void check_ledger(const json& r, std::optional<Epoch> epoch);

  void on_header(const json& r);
  void on_registry(const json& r);
  void on_pulse(const json& r);
  void on_governance_proposed(const json& r);
  void on_governance_effective(const json& r);
  void on_committee(const json& r);
  void on_observation(const json& r);
  void on_packet_built(const json& r);
  void on_receipt(const json& r);
  void on_fraud_event(const json& r);
  void on_fraud_relayed(const json& r);
  void on_slash_report(const json& r);
  void on_epoch(const json& r);

  bool header_ = false;
  bool registry_ = false;
  ScenarioConfig cfg_;
  BeaconParams beacon_;
  KeyDirectory directory_;
  std::optional<RestakingHub> hub_;
  std::string hub_chain_;
  std::vector<ChainSim> chains_;
  std::vector<Pulse> pulses_;
  std::map<Epoch, EpochReplay> epochs_;
  std::set<Epoch> bad_epochs_;
  TraceVerification out_;
};

void Replayer::mismatch(std::optional<Epoch> epoch, std::string what) {
  if (epoch) {
    bad_epochs_.insert(*epoch);
    what = "epoch " + std::to_string(*epoch) + ": " + what;
  }
  out_.problems.push_back(std::move(what));
}

ChainSim* Replayer::chain(const std::string& id) {
  for (auto& c : chains_) {
    if (c.config().chain_id == id) return &c;
  }
  return nullptr;
}

TraceVerification Replayer::run(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  try {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      json r;
      try {
        r = json::parse(line);
      } catch (const json::exception& e) {
        throw CorruptTrace("line " + std::to_string(line_no) + ": " + e.what());
      }
      if (!r.is_object()) throw CorruptTrace("line " + std::to_string(line_no) + ": not an object");
      ++out_.records;
      try {
        dispatch(r);
      } catch (const json::exception& e) {
        throw CorruptTrace("line " + std::to_string(line_no) + ": " + e.what());
      } catch (const Error& e) {
        if (e.code() == Errc::DecodeError || e.code() == Errc::ConfigParse || !header_ || !registry_) {
          throw CorruptTrace("line " + std::to_string(line_no) + ": " + e.what());
        }
        std::optional<Epoch> epoch;
        if (r.contains("epoch") && r["epoch"].is_number_unsigned()) epoch = r["epoch"].get<Epoch>();
        mismatch(epoch, "line " + std::to_string(line_no) + ": " + e.what());
      }
    }
    if (!header_) throw CorruptTrace("missing header record");
  } catch (const CorruptTrace& e) {
    out_.status = TraceStatus::Corrupt;
    out_.problems.assign(1, e.what());
    return out_;
  }
  out_.mismatched_epochs.assign(bad_epochs_.begin(), bad_epochs_.end());
  if (!out_.problems.empty()) out_.status = TraceStatus::Mismatch;
  return out_;
}

void Replayer::dispatch(const json& r) {
  const std::string type = r.at("type").get<std::string>();
  if (!header_ && type != "header") throw CorruptTrace("first record is not a header");
  if (type == "header") {
    on_header(r);
    return;
  }
  if (!registry_ && type != "registry") throw CorruptTrace("registry record missing");
  if (type == "registry") on_registry(r);
  else if (type == "pulse") on_pulse(r);
  else if (type == "governance_proposed") on_governance_proposed(r);
  else if (type == "governance_effective") on_governance_effective(r);
  else if (type == "ledger") check_ledger(r, r.at("epoch").get<Epoch>());
  else if (type == "ledger_final") check_ledger(r, std::nullopt);
  else if (type == "committee") on_committee(r);
  else if (type == "observation") on_observation(r);
  else if (type == "packet_built") on_packet_built(r);
  else if (type == "packet_failed") epoch_state(r);
  else if (type == "receipt") on_receipt(r);
  else if (type == "fraud_event") on_fraud_event(r);
  else if (type == "fraud_relayed") on_fraud_relayed(r);
  else if (type == "slash_report") on_slash_report(r);
  else if (type == "epoch") on_epoch(r);
  else throw CorruptTrace("unknown record type '" + type + "'");
}

void Replayer::on_header(const json& r) {
  if (header_) throw CorruptTrace("duplicate header");
  if (r.at("format").get<std::string>() != "vzor-trace/1") throw CorruptTrace("unsupported trace format");
  try {
    cfg_ = parse_scenario_text(r.at("config").get<std::string>());
    cfg_.validate();
  } catch (const Error& e) {
    throw CorruptTrace(std::string("embedded config: ") + e.what());
  }
  beacon_ = cfg_.beacon_params();
  hub_.emplace(cfg_.genesis_params(), cfg_.governance_delay);
  for (const auto& c : cfg_.chains) chains_.emplace_back(c);
  std::size_t fastest = 0;
  for (std::size_t i = 1; i < chains_.size(); ++i) {
    if (chains_[i].config().block_time < chains_[fastest].config().block_time) fastest = i;
  }
  hub_chain_ = chains_[fastest].config().chain_id;
  header_ = true;
}

void Replayer::on_registry(const json& r) {
  if (registry_) throw CorruptTrace("duplicate registry");
  registry_ = true;
  if (r.at("hub_chain").get<std::string>() != hub_chain_) mismatch(std::nullopt, "hub chain differs");
  const auto& reporters = r.at("reporters");
  if (reporters.size() != cfg_.registry_size) mismatch(std::nullopt, "registry size differs from config");
  for (const auto& rep : reporters) {
    const auto id = rep.at("id").get<ReporterId>();
    const Wei stake = eth(rep.at("stake").get<std::string>());
    if (stake != cfg_.initial_stake) mismatch(std::nullopt, "initial stake of reporter " + std::to_string(id));
    directory_[id] = hex_at<32>(rep, "public_key");
    hub_->register_reporter(id, stake);
  }
}

void Replayer::on_pulse(const json& r) {
  Pulse p;
  p.index = r.at("index").get<std::uint64_t>();
  p.timestamp = r.at("timestamp").get<std::uint64_t>();
  p.value = hex_at<64>(r, "value");
  p.prev_digest = hex_at<32>(r, "prev_digest");
  p.chain_digest = hex_at<32>(r, "chain_digest");
  const Pulse expected = pulses_.empty() ? genesis(beacon_) : next_pulse(pulses_.back(), beacon_);
  if (!(p == expected)) mismatch(std::nullopt, "pulse " + std::to_string(p.index) + " breaks the chain");
  pulses_.push_back(expected);
}

void Replayer::on_governance_proposed(const json& r) {
  const Epoch at = r.at("proposed_at").get<Epoch>();
  const GovernanceUpdate u = hub_->propose_update(r.at("param").get<std::string>(),
                                                  parse_fixed(r.at("value").get<std::string>(), 0), at);
  if (u.effective_epoch != r.at("effective_epoch").get<Epoch>()) mismatch(at, "governance effective epoch");
  if (r.at("chain").get<std::string>() != hub_chain_) mismatch(at, "governance posted off the hub chain");
  ChainSim* hub = chain(hub_chain_);
  if (r.at("gas").get<std::uint64_t>() != hub->charge(GasOp::GovernanceUpdate)) mismatch(at, "governance gas");
}

void Replayer::on_governance_effective(const json& r) {
  const Epoch e = r.at("epoch").get<Epoch>();
  const GovernedParam param = parse_governed_param(r.at("param").get<std::string>());
  const Wei value = parse_fixed(r.at("value").get<std::string>(), 0);
  const bool known = std::any_of(hub_->updates().begin(), hub_->updates().end(), [&](const auto& u) {
    return u.param == param && u.value == value && u.effective_epoch == e;
  });
  if (!known) mismatch(e, "governance activation without a matching proposal");
}

void Replayer::check_ledger(const json& r, std::optional<Epoch> epoch) {
  const auto& stakes = r.at("stakes");
  const auto& actual = hub_->stakes();
  bool same = stakes.size() == actual.size();
  std::size_t i = 0;
  for (auto it = actual.begin(); same && it != actual.end(); ++it, ++i) {
    same = eth(stakes[i].get<std::string>()) == it->second;
  }
  if (!same) mismatch(epoch, "ledger stakes differ from replay");
  if (eth(r.at("burned").get<std::string>()) != hub_->burned_total()) mismatch(epoch, "burned total differs");
}

void Replayer::on_committee(const json& r) {
  const Epoch t = r.at("epoch").get<Epoch>();
  EpochReplay& st = epoch_state(r);
  st.params = hub_->effective_params(t);
  const auto& params = r.at("params");
  if (params.at("f_min").get<std::uint32_t>() != st.params.quorum ||
      params.at("n").get<std::uint32_t>() != st.params.committee_size ||
      eth(params.at("s_cut").get<std::string>()) != st.params.slash_amount ||
      eth(params.at("S_min").get<std::string>()) != st.params.min_stake) {
    mismatch(t, "committee drawn under parameters other than the effective ones");
  }
  if (!r.at("error").get<std::string>().empty()) return;

  const auto pulse_index = r.at("pulse_index").get<std::uint64_t>();
  if (pulse_index >= pulses_.size()) {
    mismatch(t, "committee references an unseen pulse");
    return;
  }
  const Bytes input = sortition_input(pulses_[pulse_index].value, t);
  const Digest input_digest = sha256(input);
  Committee c;
  c.epoch = t;
  for (const auto& m : r.at("members")) {
    const auto id = m.at("id").get<ReporterId>();
    const auto key = directory_.find(id);
    if (key == directory_.end()) {
      mismatch(t, "committee member " + std::to_string(id) + " is not registered");
      continue;
    }
    ScoredReporter s{{id, key->second}, {hex_at<32>(m, "vrf_value"), hex_at<64>(m, "vrf_proof"), input_digest}};
    if (!vrf_verify(key->second, input, s.output)) mismatch(t, "VRF proof of member " + std::to_string(id));
    if (!hub_->is_active(id)) mismatch(t, "inactive reporter " + std::to_string(id) + " selected");
    c.members.push_back(s);
  }
  const bool ordered = std::is_sorted(c.members.begin(), c.members.end(), [](const auto& a, const auto& b) {
    return a.output.value != b.output.value ? a.output.value < b.output.value : a.identity.id < b.identity.id;
  });
  if (!ordered) mismatch(t, "committee not ranked by VRF value");
  if (cfg_.sortition.mode == SortitionMode::LowestN && c.size() != st.params.committee_size) {
    mismatch(t, "committee size");
  }
  st.committee = std::move(c);
}

void Replayer::on_observation(const json& r) {
  SignedObservation o;
  o.reporter_id = r.at("reporter").get<ReporterId>();
  o.value = r.at("value").get<Price>();
  o.epoch = r.at("epoch").get<Epoch>();
  o.signature = hex_at<64>(r, "signature");
  const auto key = directory_.find(o.reporter_id);
  if (key == directory_.end() || !verify_observation(key->second, o, cfg_.value_range)) {
    mismatch(o.epoch, "observation signature of reporter " + std::to_string(o.reporter_id));
  }
}

void Replayer::on_packet_built(const json& r) {
  const Epoch t = r.at("epoch").get<Epoch>();
  EpochReplay& st = epoch_state(r);
  const OraclePacket packet = decode_packet(from_hex(r.at("packet").get<std::string>()));
  st.digest = packet_digest(packet);
  if (hex_at<32>(r, "packet_digest") != st.digest) mismatch(t, "packet digest");
  if (packet.epoch != t) mismatch(t, "packet epoch");
  if (!st.committee) mismatch(t, "packet built without a committee");
  st.fraud_injected = r.at("fraud_injected").get<bool>();
  st.packet = packet;
}

void Replayer::on_receipt(const json& r) {
  const Epoch t = r.at("epoch").get<Epoch>();
  EpochReplay& st = epoch_state(r);
  const std::string chain_id = r.at("chain").get<std::string>();
  ChainSim* sim = chain(chain_id);
  if (!sim) {
    mismatch(t, "receipt from unknown chain " + chain_id);
    return;
  }
  if (!st.packet || !st.committee) {
    mismatch(t, "receipt for a packet that was never built");
    return;
  }
  ++out_.packets_checked;
  const Receipt expected = sim->submit_packet(*st.packet, *st.committee, directory_,
                                              cfg_.aggregation(st.params), r.at("t_us").get<Micros>());
  const std::string where = " on " + chain_id;
  if (r.at("accepted").get<bool>() != expected.result.accepted) mismatch(t, "accepted bit" + where);
  if (r.at("reason").get<std::string>() != expected.result.failure.to_string()) mismatch(t, "reason" + where);
  if (r.at("gas").get<std::uint64_t>() != expected.gas_used) mismatch(t, "gas" + where);
  if (r.at("block_height").get<std::uint64_t>() != expected.block_height) mismatch(t, "block height" + where);
  if (r.at("final_at_us").get<Micros>() != expected.final_at) mismatch(t, "finality time" + where);
  if (hex_at<32>(r, "packet_digest") != expected.packet_digest) mismatch(t, "packet digest" + where);
  if (r.at("duplicate").get<bool>() != expected.duplicate) mismatch(t, "duplicate flag" + where);
  if (st.receipts.contains(chain_id)) mismatch(t, "second receipt" + where);
  st.receipts[chain_id] = expected;
}

void Replayer::on_fraud_event(const json& r) {
  const Epoch t = r.at("epoch").get<Epoch>();
  EpochReplay& st = epoch_state(r);
  const auto it = st.receipts.find(r.at("chain").get<std::string>());
  if (it == st.receipts.end() || it->second.result.accepted) {
    mismatch(t, "fraud event without a rejected receipt");
    return;
  }
  if (r.at("reason").get<std::string>() != it->second.result.failure.to_string()) mismatch(t, "fraud reason");
  if (hex_at<32>(r, "packet_digest") != it->second.packet_digest) mismatch(t, "fraud packet digest");
}

void Replayer::on_fraud_relayed(const json& r) {
  const Epoch t = r.at("epoch").get<Epoch>();
  EpochReplay& st = epoch_state(r);
  const std::string origin = r.at("origin_chain").get<std::string>();
  const auto it = st.receipts.find(origin);
  if (it == st.receipts.end() || it->second.result.accepted) mismatch(t, "relay without a rejected receipt");
  if (hex_at<32>(r, "packet_digest") != st.digest) mismatch(t, "relayed packet digest");
  if (r.at("hub_chain").get<std::string>() != hub_chain_) mismatch(t, "relay to a chain other than the hub");
  if (r.at("gas").get<std::uint64_t>() != chain(hub_chain_)->charge(GasOp::SubmitFraud)) mismatch(t, "relay gas");
  st.relayed.insert(origin);
}

void Replayer::on_slash_report(const json& r) {
  const Epoch t = r.at("epoch").get<Epoch>();
  EpochReplay& st = epoch_state(r);
  const std::string origin = r.at("origin_chain").get<std::string>();
  const auto relay = st.relayed.find(origin);
  if (relay == st.relayed.end() || !st.packet) {
    mismatch(t, "adjudication without a relayed fraud proof");
    return;
  }
  st.relayed.erase(relay);
  ++out_.adjudications_checked;
  const SlashReport expected = hub_->adjudicate(make_fraud_proof(*st.packet, origin), *st.committee, directory_,
                                                cfg_.aggregation(st.params));
  std::vector<std::string> cuts;
  for (const auto c : expected.cuts) cuts.push_back(wei_text(c));
  if (r.at("outcome").get<std::string>() != to_string(expected.outcome)) mismatch(t, "adjudication outcome");
  if (r.at("verify_failure").get<std::string>() != expected.verify_failure.to_string()) {
    mismatch(t, "adjudication failure reason");
  }
  if (hex_at<32>(r, "packet_digest") != expected.packet_digest) mismatch(t, "adjudicated packet digest");
  if (id_list(r.at("slashed")) != expected.slashed) mismatch(t, "slashed reporters");
  if (r.at("cuts").get<std::vector<std::string>>() != cuts) mismatch(t, "slash amounts");
  if (id_list(r.at("skipped")) != expected.skipped) mismatch(t, "skipped accusations");
  if (eth(r.at("per_reporter_cut").get<std::string>()) != expected.per_reporter_cut) mismatch(t, "per-reporter cut");
  if (eth(r.at("total_cut").get<std::string>()) != expected.total_cut) mismatch(t, "total cut");
  if (expected.applied()) st.applied = expected;
}

void Replayer::on_epoch(const json& r) {
  const Epoch t = r.at("epoch").get<Epoch>();
  EpochReplay& st = epoch_state(r);
  if (st.committee && id_list(r.at("committee")) != st.committee->ids()) mismatch(t, "epoch committee");
  const auto& median = r.at("median");
  if (st.packet) {
    if (median.is_null() || median.get<Price>() != st.packet->median) mismatch(t, "epoch median");
    if (hex_at<32>(r, "packet_digest") != st.digest) mismatch(t, "epoch packet digest");
  } else if (!median.is_null()) {
    mismatch(t, "epoch median without a packet");
  }
  if (r.at("fraud_injected").get<bool>() != st.fraud_injected) mismatch(t, "fraud flag");

  bool all_accepted = !r.at("chains").empty();
  Micros last_final = 0;
  for (const auto& c : r.at("chains")) {
    const std::string id = c.at("chain").get<std::string>();
    const bool delivered = c.at("delivered").get<bool>();
    const auto it = st.receipts.find(id);
    if (delivered != (it != st.receipts.end())) {
      mismatch(t, "delivery to " + id);
      all_accepted = false;
      continue;
    }
    if (!delivered) {
      all_accepted = false;
      continue;
    }
    const Receipt& rc = it->second;
    if (c.at("accepted").get<bool>() != rc.result.accepted || c.at("gas").get<std::uint64_t>() != rc.gas_used ||
        c.at("final_at_us").get<Micros>() != rc.final_at ||
        c.at("reason").get<std::string>() != rc.result.failure.to_string()) {
      mismatch(t, "epoch outcome on " + id);
    }
    all_accepted = all_accepted && rc.result.accepted;
    last_final = std::max(last_final, rc.final_at);
  }
  const auto& latency = r.at("e2e_latency_us");
  const Micros start = r.at("start_us").get<Micros>();
  if (all_accepted != !latency.is_null() || (all_accepted && latency.get<Micros>() != last_final - start)) {
    mismatch(t, "end-to-end latency");
  }
  const std::vector<ReporterId> slashed = st.applied ? st.applied->slashed : std::vector<ReporterId>{};
  if (id_list(r.at("slashed")) != slashed) mismatch(t, "epoch slashed set");
}

}  // namespace

TraceVerification verify_trace(std::istream& in) { return Replayer{}.run(in); }

TraceVerification verify_trace_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return verify_trace(in);
}

}  // namespace vzor
