#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "vzor/hub.hpp"
#include "vzor/scenario.hpp"

namespace vzor {

enum class EventKind {
  PulseEmit,
  CommitteeDraw,
  ObservationReady,
  PacketBuilt,
  PacketDelivered,
  FraudRelayed,
  SlashApplied,
  GovernanceEffective,
};

std::string_view to_string(EventKind kind);

struct PulsePayload {
  std::uint64_t pulse_index = 0;
};
struct EpochPayload {
  Epoch epoch = 0;
};
struct ObservationPayload {
  Epoch epoch = 0;
  SignedObservation observation;
  bool honest = true;
};
struct DeliveryPayload {
  Epoch epoch = 0;
  std::size_t chain = 0;
};
struct FraudPayload {
  Epoch epoch = 0;
  std::size_t origin_chain = 0;
  Digest packet_digest{};
  Micros emitted_at = 0;
};
struct GovernancePayload {
  GovernanceUpdate update;
};

using EventPayload = std::variant<PulsePayload, EpochPayload, ObservationPayload, DeliveryPayload,
                                  FraudPayload, GovernancePayload>;

/// Ordered by (fire_at, sequence); the sequence number is the scheduling
/// order, so simultaneous events run first-scheduled first.
struct SimEvent {
  Micros fire_at = 0;
  std::uint64_t sequence = 0;
  EventKind kind = EventKind::PulseEmit;
  EventPayload payload;

  bool operator>(const SimEvent& o) const {
    return fire_at != o.fire_at ? fire_at > o.fire_at : sequence > o.sequence;
  }
};

// Epoch lifecycle steps: 1 pulse, 2 committee draw, 3 aggregation, 4 proof,
// 5 broadcast, 6 verification, 7 slashing.
struct LifecycleStep {
  int step = 0;
  Micros at = 0;
};

struct ChainOutcome {
  std::string chain_id;
  bool delivered = false;
  bool accepted = false;
  std::uint64_t gas = 0;
  Micros delivered_at = 0;
  Micros final_at = 0;
  std::string reason;
};

struct EpochRecord {
  Epoch epoch = 0;
  Micros start = 0;
  std::uint64_t pulse_index = 0;
  Digest pulse_digest{};
  std::vector<ReporterId> committee_ids;
  std::optional<Price> median;
  std::optional<Digest> packet_digest;
  std::vector<ChainOutcome> chains;
  Micros prove_time = 0;
  std::optional<Micros> e2e_latency;
  bool fraud_injected = false;
  std::optional<Micros> fraud_emitted_at;
  std::optional<Micros> slash_latency;
  std::vector<ReporterId> slashed_ids;
  std::optional<Price> honest_min;
  std::optional<Price> honest_max;
  std::size_t valid_observations = 0;
  std::vector<LifecycleStep> lifecycle;
  std::string error;  // committee draw or packet build failure

  bool all_accepted() const;
};

struct RunTrace {
  ScenarioConfig config;
  std::vector<std::string> log;  // one JSON object per line, processing order
  std::vector<EpochRecord> epochs;
  std::vector<Pulse> pulses;
  std::vector<SlashReport> slash_reports;  // applied adjudications only
  std::map<ReporterId, Wei> initial_stakes;
  std::map<ReporterId, Wei> final_stakes;
  Wei burned_total = 0;
  std::map<std::string, std::uint64_t> chain_gas;
  std::map<std::string, std::uint64_t> verify_gas_per_packet;
  std::vector<std::uint64_t> selection_counts;  // indexed by reporter id
  Micros end_time = 0;
};

/// Runs the full epoch lifecycle for every epoch of the scenario on a single
/// deterministic event loop. Throws Error(InvalidScenario).
RunTrace run(const ScenarioConfig& scenario);

struct LivenessReport {
  std::uint64_t checked = 0;
  std::vector<Epoch> violations;
  Micros slack = 0;
  Micros max_bound = 0;

  bool ok() const noexcept { return violations.empty(); }
};

/// tau_f(max over chains) + delta_net_max + t_prove + slack, where the slack
/// is the observation collection window (delta_net_max): the aggregator
/// waits one full message bound for reporter observations before proving.
Micros liveness_bound(const ScenarioConfig& config, Micros prove_time);

/// Checks every honest epoch (no injected fraud) delivered and met the bound.
LivenessReport check_liveness(const RunTrace& trace, const TimingModel& timing);

struct MetricsSummary {
  std::uint64_t epochs = 0;
  std::uint64_t packets_built = 0;
  std::uint64_t accepted_packets = 0;  // accepted on every destination chain
  std::uint64_t fraud_injected = 0;
  std::uint64_t slash_reports = 0;
  double duration_s = 0;
  double mean_latency_s = 0;
  double sd_latency_s = 0;  // population standard deviation
  double throughput_pps = 0;  // accepted packets per simulated second
  double epoch_rate = 0;      // epochs per simulated second
  std::vector<double> slash_latencies_s;
  double mean_slash_latency_s = 0;
  std::map<std::string, std::uint64_t> chain_gas;
  std::map<std::string, std::uint64_t> verify_gas_per_packet;
  std::vector<double> selection_frequency;
  std::uint64_t safety_violations = 0;
  std::uint64_t liveness_violations = 0;
};

MetricsSummary metrics(const RunTrace& trace);

/// Accepted medians that fall outside the honest observations' range.
std::vector<Epoch> safety_violations(const RunTrace& trace);

}  // namespace vzor
