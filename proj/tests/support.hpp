#pragma once

// Shared fixtures and independent oracles for the unit and acceptance tests.
// The oracles deliberately avoid the library's own helpers: they hash with raw
// libsodium calls and lay out bytes by hand.

#include <sodium.h>

#include <algorithm>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "vzor/beacon.hpp"
#include "vzor/committee.hpp"
#include "vzor/crypto.hpp"
#include "vzor/observation.hpp"
#include "vzor/proof.hpp"
#include "vzor/vrf.hpp"

namespace vzor::testing {

struct Registry {
  std::vector<ReporterSecret> secrets;
  std::vector<ReporterIdentity> identities;
  KeyDirectory directory;
};

inline Digest seed_for(std::uint64_t salt, std::uint32_t i) {
  Digest d{};
  for (int b = 0; b < 8; ++b) d[b] = static_cast<std::uint8_t>(salt >> (8 * b));
  for (int b = 0; b < 4; ++b) d[8 + b] = static_cast<std::uint8_t>(i >> (8 * b));
  d[31] = 0x5a;
  return d;
}

inline Registry make_registry(std::uint32_t size, std::uint64_t salt = 7) {
  Registry r;
  for (std::uint32_t i = 0; i < size; ++i) {
    auto [identity, secret] = vrf_keygen(i, seed_for(salt, i));
    r.directory.emplace(i, identity.public_key);
    r.identities.push_back(identity);
    r.secrets.push_back(secret);
  }
  return r;
}

inline BeaconParams beacon_params(std::uint8_t fill = 0x11) {
  BeaconParams p;
  p.seed.fill(fill);
  return p;
}

/// Committee drawn the normal way from a generated pulse.
inline Committee draw_committee(const Registry& reg, Epoch epoch, std::uint32_t n,
                                std::uint8_t beacon_fill = 0x11) {
  const Pulse pulse = genesis(beacon_params(beacon_fill));
  const auto scored = evaluate_registry(reg.secrets, pulse, epoch);
  SortitionParams sp;
  sp.committee_size = n;
  return select_committee(pulse, epoch, scored, sp);
}

inline std::vector<SignedObservation> sign_values(const Registry& reg, const Committee& committee,
                                                  const std::vector<Price>& values, Epoch epoch,
                                                  const ValueRange& range = {}) {
  std::vector<SignedObservation> out;
  for (std::size_t i = 0; i < values.size() && i < committee.members.size(); ++i) {
    const ReporterId id = committee.members[i].identity.id;
    out.push_back(sign_observation(reg.secrets.at(id), values[i], epoch, range));
  }
  return out;
}

// ---------------------------------------------------------------- oracles --

inline Digest oracle_sha256(const std::vector<std::uint8_t>& data) {
  Digest out{};
  crypto_hash_sha256(out.data(), data.data(), data.size());
  return out;
}

inline Digest oracle_tagged(std::string_view tag, const std::vector<std::uint8_t>& data) {
  std::vector<std::uint8_t> b{static_cast<std::uint8_t>(tag.size())};
  b.insert(b.end(), tag.begin(), tag.end());
  b.insert(b.end(), data.begin(), data.end());
  return oracle_sha256(b);
}

inline void put_be(std::vector<std::uint8_t>& out, std::uint64_t v, int bytes) {
  for (int i = bytes - 1; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline void put_tag(std::vector<std::uint8_t>& out, std::string_view tag) {
  out.push_back(static_cast<std::uint8_t>(tag.size()));
  out.insert(out.end(), tag.begin(), tag.end());
}

/// Sort a copy, take the element at (n - 1) / 2.
inline Price oracle_median(std::vector<Price> values) {
  std::sort(values.begin(), values.end());
  return values[(values.size() - 1) / 2];
}

inline Digest oracle_leaf(const WitnessEntry& e, std::uint32_t position) {
  std::vector<std::uint8_t> b{0x00};
  put_be(b, position, 4);
  put_be(b, e.reporter_id, 4);
  put_be(b, static_cast<std::uint64_t>(e.value), 8);
  b.insert(b.end(), e.signature.begin(), e.signature.end());
  return oracle_sha256(b);
}

inline Digest oracle_node(const Digest& l, const Digest& r) {
  std::vector<std::uint8_t> b{0x01};
  b.insert(b.end(), l.begin(), l.end());
  b.insert(b.end(), r.begin(), r.end());
  return oracle_sha256(b);
}

inline Digest oracle_subtree(const std::vector<Digest>& leaves, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return leaves[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return oracle_node(oracle_subtree(leaves, lo, mid), oracle_subtree(leaves, mid, hi));
}

/// Recursive top-down Merkle root with duplicate-last padding to a power of two.
inline Digest oracle_root(const std::vector<WitnessEntry>& entries) {
  if (entries.empty()) return Digest{};
  std::vector<Digest> leaves;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    leaves.push_back(oracle_leaf(entries[i], static_cast<std::uint32_t>(i)));
  }
  std::size_t width = 1;
  while (width < std::max<std::size_t>(2, leaves.size())) width <<= 1;
  while (leaves.size() < width) leaves.push_back(leaves.back());
  return oracle_subtree(leaves, 0, leaves.size());
}

inline bool oracle_signature_ok(const PublicKey& pk, const WitnessEntry& e, Epoch epoch) {
  std::vector<std::uint8_t> msg;
  put_tag(msg, "VZOR/obs/v1");
  put_be(msg, static_cast<std::uint64_t>(e.value), 8);
  put_be(msg, epoch, 8);
  put_be(msg, e.reporter_id, 4);
  return crypto_sign_verify_detached(e.signature.data(), msg.data(), msg.size(), pk.data()) == 0;
}

/// Brute-force re-check of every packet constraint from scratch: each revealed
/// entry is signed by a registered committee member, at least f_min distinct
/// signers, claimed median equals the lower median, every value in range, all
/// epochs agree, and every commitment matches a recomputation.
inline bool oracle_accepts(const OraclePacket& packet, const Committee& committee,
                           const KeyDirectory& registry, const AggregationParams& params) {
  if (!packet.proof.revealed_witness) return false;
  const Witness& w = *packet.proof.revealed_witness;
  if (w.entries.empty()) return false;
  std::vector<ReporterId> ids;
  std::vector<Price> values;
  for (const auto& e : w.entries) {
    const auto key = registry.find(e.reporter_id);
    if (key == registry.end() || !oracle_signature_ok(key->second, e, w.epoch)) return false;
    bool member = false;
    for (const auto& m : committee.members) member = member || m.identity.id == e.reporter_id;
    if (!member) return false;
    if (e.value < params.value_range.min || e.value > params.value_range.max) return false;
    ids.push_back(e.reporter_id);
    values.push_back(e.value);
  }
  if (!std::is_sorted(ids.begin(), ids.end()) || std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    return false;
  }
  if (ids.size() < params.quorum) return false;
  if (packet.median != oracle_median(values)) return false;
  if (w.epoch != packet.epoch || committee.epoch != packet.epoch) return false;
  if (packet.proof.quorum_count != w.entries.size()) return false;
  if (oracle_root(w.entries) != packet.proof.witness_root) return false;

  std::vector<ScoredReporter> sorted = committee.members;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.identity.id < b.identity.id; });
  std::vector<std::uint8_t> cb;
  put_be(cb, committee.epoch, 8);
  put_be(cb, sorted.size(), 4);
  for (const auto& m : sorted) {
    put_be(cb, m.identity.id, 4);
    cb.insert(cb.end(), m.identity.public_key.begin(), m.identity.public_key.end());
  }
  const Digest cdigest = oracle_tagged("VZOR/committee/v1", cb);
  if (w.committee_digest != cdigest) return false;
  std::vector<std::uint8_t> sb;
  put_be(sb, static_cast<std::uint64_t>(packet.median), 8);
  put_be(sb, packet.epoch, 8);
  sb.insert(sb.end(), cdigest.begin(), cdigest.end());
  put_be(sb, packet.proof.quorum_count, 4);
  put_be(sb, params.quorum, 4);
  put_be(sb, params.committee_size, 4);
  put_be(sb, static_cast<std::uint64_t>(params.value_range.min), 8);
  put_be(sb, static_cast<std::uint64_t>(params.value_range.max), 8);
  return oracle_tagged("VZOR/statement/v1", sb) == packet.proof.statement_digest;
}

/// Hamming distance between two byte arrays.
template <std::size_t N>
int bit_distance(const std::array<std::uint8_t, N>& a, const std::array<std::uint8_t, N>& b) {
  int d = 0;
  for (std::size_t i = 0; i < N; ++i) d += __builtin_popcount(static_cast<unsigned>(a[i] ^ b[i]));
  return d;
}

}  // namespace vzor::testing
