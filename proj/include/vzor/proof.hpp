#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vzor/bytes.hpp"
#include "vzor/committee.hpp"
#include "vzor/observation.hpp"

namespace vzor {

struct WitnessEntry {
  ReporterId reporter_id = 0;
  Price value = 0;
  Signature signature{};

  bool operator==(const WitnessEntry&) const = default;
};

/// The signed observations {v_i, sigma_i} behind a packet, bound to one epoch
/// and one committee. Entries are sorted by reporter id with no duplicates.
struct Witness {
  std::vector<WitnessEntry> entries;
  Epoch epoch = 0;
  Digest committee_digest{};

  bool operator==(const Witness&) const = default;
};

bool is_well_formed(const Witness& witness);
Witness make_witness(std::span<const SignedObservation> observations, const Committee& committee);

/// Transparent proof: the witness is revealed and the verifier re-executes
/// the statement. The commitments let a succinct backend slot in later.
struct ProofObject {
  Digest statement_digest{};
  Digest witness_root{};
  std::uint32_t quorum_count = 0;
  std::optional<Witness> revealed_witness;

  bool operator==(const ProofObject&) const = default;
};

struct OraclePacket {
  Price median = 0;
  ProofObject proof;
  Epoch epoch = 0;

  bool operator==(const OraclePacket&) const = default;
};

struct FailureReason {
  enum class Kind {
    None,
    BadSignature,
    NonMember,
    QuorumNotMet,
    WrongMedian,
    RangeViolation,
    EpochMismatch,
    CommitmentMismatch,
  };

  Kind kind = Kind::None;
  std::optional<ReporterId> reporter;

  bool operator==(const FailureReason&) const = default;

  // "none", "QuorumNotMet", "BadSignature(7)", ...
  std::string to_string() const;
  static FailureReason parse(std::string_view text);
};

struct VerifyResult {
  bool accepted = true;
  FailureReason failure;

  static VerifyResult ok() { return {}; }
  static VerifyResult reject(FailureReason::Kind kind, std::optional<ReporterId> who = std::nullopt) {
    return {false, FailureReason{kind, who}};
  }
  bool operator==(const VerifyResult&) const = default;
};

Digest statement_digest(Price median, Epoch epoch, const Digest& committee_digest,
                        std::uint32_t quorum_count, const AggregationParams& params);

/// Commits to the claimed statement without checking it; a dishonest prover
/// can produce a proof for a false median and only verify() will notice.
/// Throws Error(MalformedWitness) for unsorted or duplicate entries.
ProofObject prove(const Witness& witness, Price median, const Committee& committee,
                  const AggregationParams& params);

/// Checks, in order: signatures, committee membership, quorum, median,
/// value ranges, epoch binding, commitments. The first failure is reported.
VerifyResult verify(const OraclePacket& packet, const Committee& committee,
                    const KeyDirectory& registry, const AggregationParams& params);

// Merkle commitment over witness entries. Leaves are H(0x00 || position ||
// entry) and nodes H(0x01 || left || right); the leaf row is padded to a power
// of two (at least 2) by repeating the last leaf.
Bytes entry_bytes(const WitnessEntry& entry);
Digest leaf_hash(const WitnessEntry& entry, std::uint32_t position);
Digest node_hash(const Digest& left, const Digest& right);
Digest witness_root(std::span<const WitnessEntry> entries);
inline Digest witness_root(const Witness& w) { return witness_root(w.entries); }

struct InclusionProof {
  std::uint32_t leaf_index = 0;
  std::vector<Digest> siblings;  // bottom-up

  bool operator==(const InclusionProof&) const = default;
};

/// Throws Error(NotInWitness).
InclusionProof inclusion_proof(const Witness& witness, ReporterId reporter_id);
bool verify_inclusion(const Digest& root, const WitnessEntry& leaf, const InclusionProof& proof);

struct ProvingModel {
  enum class Kind { Constant, Linear };
  Kind kind = Kind::Constant;
  double constant_seconds = 0.83;
  // linear: intercept + slope * KiB; 0.8 s + 0.000625 s/KiB passes through 0.83 s at 48 KiB
  double intercept_seconds = 0.8;
  double seconds_per_kib = 0.000625;
};

double modeled_prove_time(const ProvingModel& model, std::size_t witness_bytes = 0);

// Canonical big-endian encodings.
//   proof:  statement[32] | root[32] | quorum u32 | has_witness u8
//           [| epoch u64 | committee[32] | count u32 | (id u32 | value i64 | sig[64])*]
//   packet: median i64 | epoch u64 | proof
Bytes encode(const ProofObject& proof);
ProofObject decode_proof(std::span<const std::uint8_t> bytes);
Bytes encode(const OraclePacket& packet);
OraclePacket decode_packet(std::span<const std::uint8_t> bytes);
Digest packet_digest(const OraclePacket& packet);

}  // namespace vzor
