#include "vzor/proof.hpp"

#include <algorithm>
#include <set>

#include "vzor/errors.hpp"

namespace vzor {

namespace {

using Kind = FailureReason::Kind;

struct KindName {
  Kind kind;
  std::string_view name;
};

constexpr KindName kKindNames[] = {
    {Kind::None, "none"},
    {Kind::BadSignature, "BadSignature"},
    {Kind::NonMember, "NonMember"},
    {Kind::QuorumNotMet, "QuorumNotMet"},
    {Kind::WrongMedian, "WrongMedian"},
    {Kind::RangeViolation, "RangeViolation"},
    {Kind::EpochMismatch, "EpochMismatch"},
    {Kind::CommitmentMismatch, "CommitmentMismatch"},
};

}  // namespace

std::string FailureReason::to_string() const {
  for (const auto& kn : kKindNames) {
    if (kn.kind == kind) {
      std::string out(kn.name);
      if (reporter) out += "(" + std::to_string(*reporter) + ")";
      return out;
    }
  }
  return "unknown";
}

FailureReason FailureReason::parse(std::string_view text) {
  FailureReason out;
  std::string_view name = text;
  const auto paren = text.find('(');
  if (paren != std::string_view::npos) {
    if (text.back() != ')') throw Error(Errc::DecodeError, "bad failure reason");
    name = text.substr(0, paren);
    const auto digits = text.substr(paren + 1, text.size() - paren - 2);
    if (digits.empty()) throw Error(Errc::DecodeError, "bad failure reason");
    ReporterId id = 0;
    for (const char c : digits) {
      if (c < '0' || c > '9') throw Error(Errc::DecodeError, "bad failure reason");
      id = id * 10 + static_cast<ReporterId>(c - '0');
    }
    out.reporter = id;
  }
  for (const auto& kn : kKindNames) {
    if (kn.name == name) {
      out.kind = kn.kind;
      return out;
    }
  }
  throw Error(Errc::DecodeError, "unknown failure reason '" + std::string(text) + "'");
}

bool is_well_formed(const Witness& witness) {
  for (std::size_t i = 1; i < witness.entries.size(); ++i) {
    if (witness.entries[i - 1].reporter_id >= witness.entries[i].reporter_id) return false;
  }
  return true;
}

Witness make_witness(std::span<const SignedObservation> observations, const Committee& committee) {
  Witness w;
  w.epoch = committee.epoch;
  w.committee_digest = committee_digest(committee);
  w.entries.reserve(observations.size());
  for (const auto& o : observations) w.entries.push_back({o.reporter_id, o.value, o.signature});
  std::sort(w.entries.begin(), w.entries.end(),
            [](const auto& a, const auto& b) { return a.reporter_id < b.reporter_id; });
  return w;
}

Digest statement_digest(Price median, Epoch epoch, const Digest& committee_digest,
                        std::uint32_t quorum_count, const AggregationParams& params) {
  ByteWriter w;
  w.i64(median)
      .u64(epoch)
      .raw(committee_digest)
      .u32(quorum_count)
      .u32(params.quorum)
      .u32(params.committee_size)
      .i64(params.value_range.min)
      .i64(params.value_range.max);
  return sha256_tagged("VZOR/statement/v1", w.bytes());
}

ProofObject prove(const Witness& witness, Price median, const Committee& committee,
                  const AggregationParams& params) {
  if (!is_well_formed(witness)) {
    throw Error(Errc::MalformedWitness, "witness entries must be strictly sorted by reporter id");
  }
  ProofObject p;
  p.quorum_count = static_cast<std::uint32_t>(witness.entries.size());
  p.witness_root = witness_root(witness);
  p.statement_digest =
      statement_digest(median, witness.epoch, committee_digest(committee), p.quorum_count, params);
  p.revealed_witness = witness;
  return p;
}

VerifyResult verify(const OraclePacket& packet, const Committee& committee,
                    const KeyDirectory& registry, const AggregationParams& params) {
  const ProofObject& proof = packet.proof;
  if (!proof.revealed_witness) return VerifyResult::reject(Kind::CommitmentMismatch);
  const Witness& w = *proof.revealed_witness;

  for (const auto& e : w.entries) {
    const auto it = registry.find(e.reporter_id);
    if (it == registry.end() ||
        !verify_signature(it->second, observation_message(e.value, w.epoch, e.reporter_id),
                          e.signature)) {
      return VerifyResult::reject(Kind::BadSignature, e.reporter_id);
    }
  }

  for (const auto& e : w.entries) {
    if (!committee.contains(e.reporter_id)) return VerifyResult::reject(Kind::NonMember, e.reporter_id);
  }

  std::set<ReporterId> signers;
  for (const auto& e : w.entries) signers.insert(e.reporter_id);
  if (signers.size() < params.quorum || signers.empty()) return VerifyResult::reject(Kind::QuorumNotMet);

  std::vector<Price> values;
  values.reserve(w.entries.size());
  for (const auto& e : w.entries) values.push_back(e.value);
  if (packet.median != median(values)) return VerifyResult::reject(Kind::WrongMedian);

  for (const auto& e : w.entries) {
    if (!params.value_range.contains(e.value)) {
      return VerifyResult::reject(Kind::RangeViolation, e.reporter_id);
    }
  }

  if (w.epoch != packet.epoch || committee.epoch != packet.epoch) {
    return VerifyResult::reject(Kind::EpochMismatch);
  }

  const Digest cdigest = committee_digest(committee);
  if (!is_well_formed(w) || proof.quorum_count != w.entries.size() ||
      witness_root(w) != proof.witness_root || w.committee_digest != cdigest ||
      statement_digest(packet.median, packet.epoch, cdigest, proof.quorum_count, params) !=
          proof.statement_digest) {
    return VerifyResult::reject(Kind::CommitmentMismatch);
  }
  return VerifyResult::ok();
}

Bytes entry_bytes(const WitnessEntry& entry) {
  ByteWriter w;
  w.u32(entry.reporter_id).i64(entry.value).raw(entry.signature);
  return w.take();
}

Digest leaf_hash(const WitnessEntry& entry, std::uint32_t position) {
  ByteWriter w;
  w.u8(0x00).u32(position).raw(entry_bytes(entry));
  return sha256(w.bytes());
}

Digest node_hash(const Digest& left, const Digest& right) {
  ByteWriter w;
  w.u8(0x01).raw(left).raw(right);
  return sha256(w.bytes());
}

namespace {

std::vector<Digest> padded_leaves(std::span<const WitnessEntry> entries) {
  std::vector<Digest> row;
  row.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    row.push_back(leaf_hash(entries[i], static_cast<std::uint32_t>(i)));
  }
  std::size_t width = 2;
  while (width < row.size()) width *= 2;
  const Digest last = row.back();
  row.resize(width, last);
  return row;
}

}  // namespace

Digest witness_root(std::span<const WitnessEntry> entries) {
  if (entries.empty()) return kZeroDigest;
  std::vector<Digest> row = padded_leaves(entries);
  while (row.size() > 1) {
    for (std::size_t i = 0; i < row.size() / 2; ++i) row[i] = node_hash(row[2 * i], row[2 * i + 1]);
    row.resize(row.size() / 2);
  }
  return row.front();
}

InclusionProof inclusion_proof(const Witness& witness, ReporterId reporter_id) {
  const auto it = std::find_if(witness.entries.begin(), witness.entries.end(),
                               [&](const auto& e) { return e.reporter_id == reporter_id; });
  if (it == witness.entries.end()) {
    throw Error(Errc::NotInWitness, "reporter " + std::to_string(reporter_id) + " not in witness");
  }
  InclusionProof proof;
  proof.leaf_index = static_cast<std::uint32_t>(it - witness.entries.begin());
  std::vector<Digest> row = padded_leaves(witness.entries);
  std::size_t index = proof.leaf_index;
  while (row.size() > 1) {
    proof.siblings.push_back(row[index ^ 1]);
    for (std::size_t i = 0; i < row.size() / 2; ++i) row[i] = node_hash(row[2 * i], row[2 * i + 1]);
    row.resize(row.size() / 2);
    index /= 2;
  }
  return proof;
}

bool verify_inclusion(const Digest& root, const WitnessEntry& leaf, const InclusionProof& proof) {
  if (proof.siblings.empty() || proof.siblings.size() >= 32) return false;
  if ((static_cast<std::uint64_t>(proof.leaf_index) >> proof.siblings.size()) != 0) return false;
  Digest acc = leaf_hash(leaf, proof.leaf_index);
  std::uint32_t index = proof.leaf_index;
  for (const auto& sib : proof.siblings) {
    acc = (index & 1) ? node_hash(sib, acc) : node_hash(acc, sib);
    index >>= 1;
  }
  return acc == root;
}

double modeled_prove_time(const ProvingModel& model, std::size_t witness_bytes) {
  if (model.kind == ProvingModel::Kind::Constant) return model.constant_seconds;
  return model.intercept_seconds +
         model.seconds_per_kib * (static_cast<double>(witness_bytes) / 1024.0);
}

namespace {

void write_proof(ByteWriter& w, const ProofObject& proof) {
  w.raw(proof.statement_digest).raw(proof.witness_root).u32(proof.quorum_count);
  w.u8(proof.revealed_witness ? 1 : 0);
  if (!proof.revealed_witness) return;
  const Witness& wit = *proof.revealed_witness;
  w.u64(wit.epoch).raw(wit.committee_digest).u32(static_cast<std::uint32_t>(wit.entries.size()));
  for (const auto& e : wit.entries) w.raw(entry_bytes(e));
}

ProofObject read_proof(ByteReader& r) {
  ProofObject p;
  p.statement_digest = r.array<32>();
  p.witness_root = r.array<32>();
  p.quorum_count = r.u32();
  const auto has_witness = r.u8();
  if (has_witness > 1) throw Error(Errc::DecodeError, "bad witness flag");
  if (has_witness == 1) {
    Witness wit;
    wit.epoch = r.u64();
    wit.committee_digest = r.array<32>();
    const auto count = r.u32();
    if (count > r.remaining() / 76) throw Error(Errc::DecodeError, "witness count exceeds record");
    wit.entries.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
      WitnessEntry e;
      e.reporter_id = r.u32();
      e.value = r.i64();
      e.signature = r.array<64>();
      wit.entries.push_back(e);
    }
    p.revealed_witness = std::move(wit);
  }
  return p;
}

}  // namespace

Bytes encode(const ProofObject& proof) {
  ByteWriter w;
  write_proof(w, proof);
  return w.take();
}

ProofObject decode_proof(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  ProofObject p = read_proof(r);
  if (!r.at_end()) throw Error(Errc::DecodeError, "trailing bytes after proof");
  return p;
}

Bytes encode(const OraclePacket& packet) {
  ByteWriter w;
  w.i64(packet.median).u64(packet.epoch);
  write_proof(w, packet.proof);
  return w.take();
}

OraclePacket decode_packet(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  OraclePacket p;
  p.median = r.i64();
  p.epoch = r.u64();
  p.proof = read_proof(r);
  if (!r.at_end()) throw Error(Errc::DecodeError, "trailing bytes after packet");
  return p;
}

Digest packet_digest(const OraclePacket& packet) {
  return sha256_tagged("VZOR/packet/v1", encode(packet));
}

}  // namespace vzor
