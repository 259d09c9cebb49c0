#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "vzor/beacon.hpp"
#include "vzor/vrf.hpp"

namespace vzor {

enum class SortitionMode {
  LowestN,    // the n smallest scores, exactly n members
  Threshold,  // every score below q/n, size varies
};

std::string_view to_string(SortitionMode mode);
SortitionMode parse_sortition_mode(std::string_view text);

struct SortitionParams {
  std::uint32_t committee_size = 15;
  SortitionMode mode = SortitionMode::LowestN;
  std::uint32_t security_bits = 128;

  void validate(std::size_t registry_size) const;
};

struct ScoredReporter {
  ReporterIdentity identity;
  VrfOutput output;

  bool operator==(const ScoredReporter&) const = default;
};

struct Committee {
  Epoch epoch = 0;
  std::vector<ScoredReporter> members;  // ascending by (value, id)

  std::size_t size() const noexcept { return members.size(); }
  const ScoredReporter* find(ReporterId id) const;
  bool contains(ReporterId id) const { return find(id) != nullptr; }
  std::vector<ReporterId> ids() const;
};

// tag || pulse value || big-endian epoch
Bytes sortition_input(const PulseValue& pulse_value, Epoch epoch);

std::vector<ScoredReporter> evaluate_registry(std::span<const ReporterSecret> secrets,
                                              const Pulse& pulse, Epoch epoch);

/// Algorithm: verify every score against (pulse.value || epoch), then rank.
/// Throws Error(UnverifiableScore) or Error(RegistryTooSmall).
Committee select_committee(const Pulse& pulse, Epoch epoch,
                           std::span<const ScoredReporter> registry,
                           const SortitionParams& params);

// value < 2^256 / n, evaluated exactly as value * n < 2^256
bool below_threshold(const Digest& value, std::uint32_t n);

// b/n + 2^-kappa
double prediction_bound(std::uint32_t b, std::uint32_t n, std::uint32_t kappa);

/// Digest of the member set ordered by id; independent of score order.
Digest committee_digest(const Committee& committee);

}  // namespace vzor
