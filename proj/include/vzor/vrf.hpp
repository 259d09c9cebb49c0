#pragma once

#include <map>
#include <span>
#include <utility>

#include "vzor/bytes.hpp"
#include "vzor/crypto.hpp"
#include "vzor/types.hpp"

namespace vzor {

struct ReporterIdentity {
  ReporterId id = 0;
  PublicKey public_key{};  // verifies both VRF proofs and observation signatures

  bool operator==(const ReporterIdentity&) const = default;
};

struct ReporterSecret {
  ReporterId id = 0;
  SecretKey secret_key{};
  PublicKey public_key{};

  bool operator==(const ReporterSecret&) const = default;
};

using KeyDirectory = std::map<ReporterId, PublicKey>;

std::pair<ReporterIdentity, ReporterSecret> vrf_keygen(ReporterId id, const Digest& seed);

Bytes encode(const ReporterIdentity& identity);
ReporterIdentity decode_identity(std::span<const std::uint8_t> bytes);
Bytes encode(const ReporterSecret& secret);
ReporterSecret decode_secret(std::span<const std::uint8_t> bytes);

/// `value` is a 256-bit big-endian integer, so byte-wise ordering is numeric
/// ordering and every value is below q = 2^256.
struct VrfOutput {
  Digest value{};
  Signature proof{};
  Digest input_digest{};

  bool operator==(const VrfOutput&) const = default;
};

// Output = H(sig) where sig is the deterministic Ed25519 signature over the
// domain-separated input; the signature is the proof.
VrfOutput vrf_evaluate(const ReporterSecret& secret, std::span<const std::uint8_t> input);
bool vrf_verify(const PublicKey& pk, std::span<const std::uint8_t> input, const VrfOutput& out);

}  // namespace vzor
