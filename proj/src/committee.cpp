#include "vzor/committee.hpp"

#include <algorithm>
#include <cmath>

#include "vzor/errors.hpp"

namespace vzor {

std::string_view to_string(SortitionMode mode) {
  return mode == SortitionMode::LowestN ? "lowest-n" : "threshold";
}

SortitionMode parse_sortition_mode(std::string_view text) {
  if (text == "lowest-n") return SortitionMode::LowestN;
  if (text == "threshold") return SortitionMode::Threshold;
  throw Error(Errc::InvalidArgument, "unknown sortition mode '" + std::string(text) + "'");
}

void SortitionParams::validate(std::size_t registry_size) const {
  if (committee_size == 0) throw Error(Errc::InvalidArgument, "committee size must be >= 1");
  if (mode == SortitionMode::LowestN && committee_size > registry_size) {
    throw Error(Errc::RegistryTooSmall, "committee size " + std::to_string(committee_size) +
                                            " exceeds registry size " +
                                            std::to_string(registry_size));
  }
  if (security_bits != 80 && security_bits != 128 && security_bits != 256) {
    throw Error(Errc::InvalidArgument, "security bits must be 80, 128 or 256");
  }
}

const ScoredReporter* Committee::find(ReporterId id) const {
  for (const auto& m : members) {
    if (m.identity.id == id) return &m;
  }
  return nullptr;
}

std::vector<ReporterId> Committee::ids() const {
  std::vector<ReporterId> out;
  out.reserve(members.size());
  for (const auto& m : members) out.push_back(m.identity.id);
  return out;
}

Bytes sortition_input(const PulseValue& pulse_value, Epoch epoch) {
  ByteWriter w;
  w.tag("VZOR/sortition/v1").raw(pulse_value).u64(epoch);
  return w.take();
}

std::vector<ScoredReporter> evaluate_registry(std::span<const ReporterSecret> secrets,
                                              const Pulse& pulse, Epoch epoch) {
  const Bytes input = sortition_input(pulse.value, epoch);
  std::vector<ScoredReporter> out;
  out.reserve(secrets.size());
  for (const auto& s : secrets) {
    out.push_back({ReporterIdentity{s.id, s.public_key}, vrf_evaluate(s, input)});
  }
  return out;
}

bool below_threshold(const Digest& value, std::uint32_t n) {
  if (n == 0) throw Error(Errc::InvalidArgument, "threshold divisor must be positive");
  std::uint64_t carry = 0;
  for (std::size_t i = value.size(); i-- > 0;) {
    const std::uint64_t prod = static_cast<std::uint64_t>(value[i]) * n + carry;
    carry = prod >> 8;
  }
  return carry == 0;
}

Committee select_committee(const Pulse& pulse, Epoch epoch,
                           std::span<const ScoredReporter> registry,
                           const SortitionParams& params) {
  params.validate(registry.size());
  const Bytes input = sortition_input(pulse.value, epoch);
  for (const auto& r : registry) {
    if (!vrf_verify(r.identity.public_key, input, r.output)) {
      throw Error(Errc::UnverifiableScore,
                  "VRF output of reporter " + std::to_string(r.identity.id) + " does not verify");
    }
  }

  std::vector<ScoredReporter> ranked(registry.begin(), registry.end());
  std::sort(ranked.begin(), ranked.end(), [](const ScoredReporter& a, const ScoredReporter& b) {
    if (a.output.value != b.output.value) return a.output.value < b.output.value;
    return a.identity.id < b.identity.id;
  });

  Committee c;
  c.epoch = epoch;
  if (params.mode == SortitionMode::LowestN) {
    ranked.resize(params.committee_size);
    c.members = std::move(ranked);
  } else {
    for (auto& r : ranked) {
      if (!below_threshold(r.output.value, params.committee_size)) break;
      c.members.push_back(std::move(r));
    }
  }
  return c;
}

double prediction_bound(std::uint32_t b, std::uint32_t n, std::uint32_t kappa) {
  if (n == 0 || b > n) throw Error(Errc::InvalidArgument, "prediction bound needs 0 <= b <= n, n >= 1");
  if (kappa == 0) throw Error(Errc::InvalidArgument, "kappa must be >= 1");
  return static_cast<double>(b) / static_cast<double>(n) + std::ldexp(1.0, -static_cast<int>(kappa));
}

Digest committee_digest(const Committee& committee) {
  std::vector<const ReporterIdentity*> members;
  members.reserve(committee.members.size());
  for (const auto& m : committee.members) members.push_back(&m.identity);
  std::sort(members.begin(), members.end(),
            [](const auto* a, const auto* b) { return a->id < b->id; });
  ByteWriter w;
  w.u64(committee.epoch).u32(static_cast<std::uint32_t>(members.size()));
  for (const auto* m : members) w.u32(m->id).raw(m->public_key);
  return sha256_tagged("VZOR/committee/v1", w.bytes());
}

}  // namespace vzor
