#pragma once

#include <span>

#include "vzor/committee.hpp"
#include "vzor/observation.hpp"
#include "vzor/proof.hpp"

namespace vzor {

/// Aggregates one epoch's observations into a proof-carrying packet.
///
/// Every observation must come from a distinct committee member and carry the
/// committee's epoch (Error NonMember / EpochMismatch / DuplicateObservation).
/// Observations whose signature or range check fails are dropped; if fewer
/// than `params.quorum` remain the build fails with Error(QuorumNotMet).
OraclePacket build_packet(std::span<const SignedObservation> observations,
                          const Committee& committee, const AggregationParams& params);

}  // namespace vzor
