#pragma once

#include <cstdint>
#include <limits>
#include <span>

#include "vzor/bytes.hpp"
#include "vzor/crypto.hpp"
#include "vzor/types.hpp"
#include "vzor/vrf.hpp"

namespace vzor {

struct ValueRange {
  Price min = 1;
  Price max = std::numeric_limits<Price>::max();

  bool contains(Price v) const noexcept { return v >= min && v <= max; }
  bool operator==(const ValueRange&) const = default;
};

struct AggregationParams {
  std::uint32_t quorum = 10;  // f_min
  std::uint32_t committee_size = 15;
  ValueRange value_range;

  void validate() const;
};

struct SignedObservation {
  ReporterId reporter_id = 0;
  Price value = 0;
  Epoch epoch = 0;
  Signature signature{};

  bool operator==(const SignedObservation&) const = default;
};

inline constexpr std::string_view kObservationContext = "VZOR/obs/v1";

// context || value || epoch || reporter_id
Bytes observation_message(Price value, Epoch epoch, ReporterId reporter_id);

/// Throws Error(ValueOutOfRange).
SignedObservation sign_observation(const ReporterSecret& secret, Price value, Epoch epoch,
                                   const ValueRange& range);
bool verify_observation(const PublicKey& pk, const SignedObservation& obs, const ValueRange& range);

// 84-byte record: reporter_id u32 | value i64 | epoch u64 | signature[64]
Bytes encode(const SignedObservation& obs);
SignedObservation decode_observation(std::span<const std::uint8_t> bytes);

/// Lower median: the element at sorted position (size - 1) / 2, so the result
/// is always one of the inputs. Throws Error(EmptyInput).
Price median(std::span<const Price> values);

}  // namespace vzor
