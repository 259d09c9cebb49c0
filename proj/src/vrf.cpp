#include "vzor/vrf.hpp"

#include "vzor/errors.hpp"

namespace vzor {

namespace {

constexpr std::string_view kVrfTag = "VZOR/vrf/v1";
constexpr std::string_view kVrfOutTag = "VZOR/vrf/out/v1";

Bytes vrf_message(std::span<const std::uint8_t> input) {
  ByteWriter w;
  w.tag(kVrfTag).raw(input);
  return w.take();
}

}  // namespace

std::pair<ReporterIdentity, ReporterSecret> vrf_keygen(ReporterId id, const Digest& seed) {
  const Keypair kp = keypair_from_seed(seed);
  return {ReporterIdentity{id, kp.public_key}, ReporterSecret{id, kp.secret_key, kp.public_key}};
}

Bytes encode(const ReporterIdentity& identity) {
  ByteWriter w;
  w.u32(identity.id).raw(identity.public_key);
  return w.take();
}

ReporterIdentity decode_identity(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  ReporterIdentity out;
  out.id = r.u32();
  out.public_key = r.array<32>();
  if (!r.at_end()) throw Error(Errc::DecodeError, "trailing bytes after identity");
  return out;
}

Bytes encode(const ReporterSecret& secret) {
  ByteWriter w;
  w.u32(secret.id).raw(secret.secret_key).raw(secret.public_key);
  return w.take();
}

ReporterSecret decode_secret(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  ReporterSecret out;
  out.id = r.u32();
  out.secret_key = r.array<64>();
  out.public_key = r.array<32>();
  if (!r.at_end()) throw Error(Errc::DecodeError, "trailing bytes after secret");
  return out;
}

VrfOutput vrf_evaluate(const ReporterSecret& secret, std::span<const std::uint8_t> input) {
  if (input.empty()) throw Error(Errc::InvalidArgument, "VRF input must be non-empty");
  VrfOutput out;
  out.proof = sign(secret.secret_key, vrf_message(input));
  out.value = sha256_tagged(kVrfOutTag, out.proof);
  out.input_digest = sha256(input);
  return out;
}

bool vrf_verify(const PublicKey& pk, std::span<const std::uint8_t> input, const VrfOutput& out) {
  if (input.empty()) return false;
  if (sha256(input) != out.input_digest) return false;
  if (sha256_tagged(kVrfOutTag, out.proof) != out.value) return false;
  return verify_signature(pk, vrf_message(input), out.proof);
}

}  // namespace vzor
