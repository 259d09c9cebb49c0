#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vzor/bytes.hpp"

namespace vzor {

using PulseValue = std::array<std::uint8_t, 64>;

struct BeaconParams {
  std::uint64_t period_seconds = 60;
  std::uint32_t min_entropy_bits = 256;
  Digest seed{};

  // throws Error(InvalidArgument)
  void validate() const;
};

/// One beacon emission. `chain_digest` commits to the four fields before it,
/// and `prev_digest` links to the previous pulse (all zeros at genesis).
struct Pulse {
  std::uint64_t index = 0;
  std::uint64_t timestamp = 0;
  PulseValue value{};
  Digest prev_digest{};
  Digest chain_digest{};

  bool operator==(const Pulse&) const = default;
};

// index | timestamp | value | prev_digest, fixed-width big-endian
Bytes canonical_bytes(const Pulse& p);
Digest compute_chain_digest(const Pulse& p);

// Two domain-separated HMAC-SHA-256 outputs keyed by the seed.
PulseValue derive_pulse_value(const Digest& seed, std::uint64_t index);

Pulse genesis(const BeaconParams& params);
Pulse next_pulse(const Pulse& prev, const BeaconParams& params);
std::vector<Pulse> generate_chain(const BeaconParams& params, std::size_t count);

struct ChainCheck {
  bool ok = true;
  std::optional<std::uint64_t> broken_at;  // pulse index of first violation
  std::string reason;

  explicit operator bool() const noexcept { return ok; }
};

/// Checks digests and linkage. The period is inferred from the first gap.
ChainCheck verify_chain(std::span<const Pulse> pulses);
/// Same, but timestamps must advance by exactly params.period_seconds.
ChainCheck verify_chain(std::span<const Pulse> pulses, const BeaconParams& params);

/// k * H_min; k must be at least 1.
std::uint64_t joint_entropy_lower_bound(std::uint64_t k, const BeaconParams& params);

// index,timestamp,hex(value),hex(prev_digest),hex(chain_digest)
std::string format_pulse_line(const Pulse& p);
Pulse parse_pulse_line(std::string_view line);
void write_pulse_file(std::ostream& out, std::span<const Pulse> pulses);
std::vector<Pulse> read_pulse_file(std::istream& in);

/// Source of pulses by index. Only the local hash-chained generator is
/// provided; a remote NIST Beacon 2.0 client would implement this too.
class PulseSource {
 public:
  virtual ~PulseSource() = default;
  virtual Pulse pulse_at(std::uint64_t index) = 0;
};

class HashChainBeacon final : public PulseSource {
 public:
  explicit HashChainBeacon(BeaconParams params);

  Pulse pulse_at(std::uint64_t index) override;
  const BeaconParams& params() const noexcept { return params_; }
  std::span<const Pulse> emitted() const noexcept { return chain_; }

 private:
  BeaconParams params_;
  std::vector<Pulse> chain_;
};

}  // namespace vzor
