#include "vzor/observation.hpp"

#include <algorithm>
#include <vector>

#include "vzor/errors.hpp"

namespace vzor {

void AggregationParams::validate() const {
  if (quorum == 0 || quorum > committee_size) {
    throw Error(Errc::InvalidArgument, "quorum must satisfy 1 <= f_min <= n");
  }
  if (value_range.min > value_range.max) throw Error(Errc::InvalidArgument, "empty value range");
}

Bytes observation_message(Price value, Epoch epoch, ReporterId reporter_id) {
  ByteWriter w;
  w.tag(kObservationContext).i64(value).u64(epoch).u32(reporter_id);
  return w.take();
}

SignedObservation sign_observation(const ReporterSecret& secret, Price value, Epoch epoch,
                                   const ValueRange& range) {
  if (!range.contains(value)) {
    throw Error(Errc::ValueOutOfRange, "observation value " + std::to_string(value) +
                                           " outside [" + std::to_string(range.min) + ", " +
                                           std::to_string(range.max) + "]");
  }
  SignedObservation obs{secret.id, value, epoch, {}};
  obs.signature = sign(secret.secret_key, observation_message(value, epoch, secret.id));
  return obs;
}

bool verify_observation(const PublicKey& pk, const SignedObservation& obs, const ValueRange& range) {
  if (!range.contains(obs.value)) return false;
  return verify_signature(pk, observation_message(obs.value, obs.epoch, obs.reporter_id),
                          obs.signature);
}

Bytes encode(const SignedObservation& obs) {
  ByteWriter w;
  w.u32(obs.reporter_id).i64(obs.value).u64(obs.epoch).raw(obs.signature);
  return w.take();
}

SignedObservation decode_observation(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  SignedObservation obs;
  obs.reporter_id = r.u32();
  obs.value = r.i64();
  obs.epoch = r.u64();
  obs.signature = r.array<64>();
  if (!r.at_end()) throw Error(Errc::DecodeError, "trailing bytes after observation");
  return obs;
}

Price median(std::span<const Price> values) {
  if (values.empty()) throw Error(Errc::EmptyInput, "median of an empty list");
  std::vector<Price> work(values.begin(), values.end());
  const auto mid = work.begin() + static_cast<std::ptrdiff_t>((work.size() - 1) / 2);
  std::nth_element(work.begin(), mid, work.end());
  return *mid;
}

}  // namespace vzor
