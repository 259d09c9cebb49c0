#include "vzor/packet.hpp"

#include <set>
#include <vector>

#include "vzor/errors.hpp"

namespace vzor {

OraclePacket build_packet(std::span<const SignedObservation> observations,
                          const Committee& committee, const AggregationParams& params) {
  params.validate();
  std::set<ReporterId> seen;
  std::vector<SignedObservation> valid;
  valid.reserve(observations.size());
  for (const auto& obs : observations) {
    if (obs.epoch != committee.epoch) {
      throw Error(Errc::EpochMismatch, "observation from reporter " + std::to_string(obs.reporter_id) +
                                           " is for epoch " + std::to_string(obs.epoch));
    }
    const ScoredReporter* member = committee.find(obs.reporter_id);
    if (member == nullptr) {
      throw Error(Errc::NonMember,
                  "reporter " + std::to_string(obs.reporter_id) + " is not on the committee");
    }
    if (!seen.insert(obs.reporter_id).second) {
      throw Error(Errc::DuplicateObservation,
                  "duplicate observation from reporter " + std::to_string(obs.reporter_id));
    }
    if (verify_observation(member->identity.public_key, obs, params.value_range)) {
      valid.push_back(obs);
    }
  }
  if (valid.size() < params.quorum) {
    throw Error(Errc::QuorumNotMet, std::to_string(valid.size()) + " valid observations, need " +
                                        std::to_string(params.quorum));
  }

  const Witness witness = make_witness(valid, committee);
  std::vector<Price> values;
  values.reserve(valid.size());
  for (const auto& e : witness.entries) values.push_back(e.value);

  OraclePacket packet;
  packet.epoch = committee.epoch;
  packet.median = median(values);
  packet.proof = prove(witness, packet.median, committee, params);
  return packet;
}

}  // namespace vzor
