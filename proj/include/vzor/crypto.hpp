#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

#include "vzor/bytes.hpp"

namespace vzor {

using PublicKey = std::array<std::uint8_t, 32>;
using SecretKey = std::array<std::uint8_t, 64>;
using Signature = std::array<std::uint8_t, 64>;

struct Keypair {
  PublicKey public_key{};
  SecretKey secret_key{};
};

Digest sha256(std::span<const std::uint8_t> data);

// H(len(tag) || tag || data)
Digest sha256_tagged(std::string_view tag, std::span<const std::uint8_t> data);

Digest hmac_sha256(std::span<const std::uint8_t> key, std::span<const std::uint8_t> message);

// Ed25519; signing is deterministic for a fixed (key, message).
Keypair keypair_from_seed(const Digest& seed);
Signature sign(const SecretKey& sk, std::span<const std::uint8_t> message);
bool verify_signature(const PublicKey& pk, std::span<const std::uint8_t> message,
                      const Signature& sig);

}  // namespace vzor
