#pragma once

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vzor/netsim.hpp"

namespace vzor {

// Run outputs. Every writer is a pure function of the trace, so identical
// runs give byte-identical files.

/// JSON Lines, one record per processed event; keys sorted.
std::string trace_text(const RunTrace& trace);

/// epoch, committee_ids, median, accepted_<chain>..., gas_<chain>...,
/// e2e_latency_s, fraud_injected, slash_latency_s, slashed_ids.
/// Id lists are ';'-separated; absent values are empty cells.
std::string epochs_csv(const RunTrace& trace);

std::string metrics_json(const RunTrace& trace);
std::string pulses_csv(const RunTrace& trace);

enum class TraceStatus { Ok, Corrupt, Mismatch };

struct TraceVerification {
  TraceStatus status = TraceStatus::Ok;
  std::vector<Epoch> mismatched_epochs;  // ascending, unique
  std::vector<std::string> problems;
  std::size_t records = 0;
  std::size_t packets_checked = 0;
  std::size_t adjudications_checked = 0;
};

/// Replays a trace without re-running the simulation: pulse chain links,
/// committee VRF proofs, every receipt through a fresh chain verifier, every
/// fraud relay through a fresh hub, ledger snapshots and epoch summaries.
TraceVerification verify_trace(std::istream& in);
TraceVerification verify_trace_text(std::string_view text);

}  // namespace vzor
