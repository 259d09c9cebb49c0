#include "vzor/beacon.hpp"

#include <sstream>

#include "vzor/crypto.hpp"
#include "vzor/errors.hpp"

namespace vzor {

void BeaconParams::validate() const {
  if (period_seconds == 0) throw Error(Errc::InvalidArgument, "beacon period must be positive");
  if (min_entropy_bits == 0 || min_entropy_bits > 512) {
    throw Error(Errc::InvalidArgument, "beacon min entropy must be in [1, 512] bits");
  }
}

Bytes canonical_bytes(const Pulse& p) {
  ByteWriter w;
  w.u64(p.index).u64(p.timestamp).raw(p.value).raw(p.prev_digest);
  return w.take();
}

Digest compute_chain_digest(const Pulse& p) {
  return sha256_tagged("VZOR/beacon/chain/v1", canonical_bytes(p));
}

PulseValue derive_pulse_value(const Digest& seed, std::uint64_t index) {
  PulseValue out{};
  for (std::uint8_t half = 0; half < 2; ++half) {
    ByteWriter msg;
    msg.tag(half == 0 ? "VZOR/beacon/value/lo" : "VZOR/beacon/value/hi").u64(index);
    const Digest d = hmac_sha256(seed, msg.bytes());
    std::copy(d.begin(), d.end(), out.begin() + half * 32);
  }
  return out;
}

Pulse genesis(const BeaconParams& params) {
  params.validate();
  Pulse p;
  p.index = 0;
  p.timestamp = 0;
  p.value = derive_pulse_value(params.seed, 0);
  p.prev_digest = kZeroDigest;
  p.chain_digest = compute_chain_digest(p);
  return p;
}

Pulse next_pulse(const Pulse& prev, const BeaconParams& params) {
  params.validate();
  Pulse p;
  p.index = prev.index + 1;
  p.timestamp = prev.timestamp + params.period_seconds;
  p.value = derive_pulse_value(params.seed, p.index);
  p.prev_digest = prev.chain_digest;
  p.chain_digest = compute_chain_digest(p);
  return p;
}

std::vector<Pulse> generate_chain(const BeaconParams& params, std::size_t count) {
  std::vector<Pulse> chain;
  chain.reserve(count);
  if (count == 0) return chain;
  chain.push_back(genesis(params));
  while (chain.size() < count) chain.push_back(next_pulse(chain.back(), params));
  return chain;
}

namespace {

ChainCheck broken(std::uint64_t index, std::string reason) {
  return ChainCheck{false, index, std::move(reason)};
}

ChainCheck verify_impl(std::span<const Pulse> pulses, std::optional<std::uint64_t> period) {
  if (pulses.empty()) return ChainCheck{false, std::nullopt, "empty pulse list"};

  const Pulse& first = pulses.front();
  if (first.index == 0 && first.prev_digest != kZeroDigest) {
    return broken(0, "genesis prev_digest is not all zeros");
  }
  if (!period && pulses.size() > 1) {
    if (pulses[1].timestamp <= first.timestamp) {
      return broken(pulses[1].index, "timestamps not strictly increasing");
    }
    period = pulses[1].timestamp - first.timestamp;
  }

  for (std::size_t i = 0; i < pulses.size(); ++i) {
    const Pulse& p = pulses[i];
    if (compute_chain_digest(p) != p.chain_digest) return broken(p.index, "chain digest mismatch");
    if (i == 0) continue;
    const Pulse& prev = pulses[i - 1];
    if (p.index != prev.index + 1) return broken(p.index, "non-consecutive index");
    if (p.prev_digest != prev.chain_digest) return broken(p.index, "prev_digest does not link");
    if (p.timestamp <= prev.timestamp || p.timestamp - prev.timestamp != *period) {
      return broken(p.index, "timestamp does not advance by the beacon period");
    }
  }
  return {};
}

}  // namespace

ChainCheck verify_chain(std::span<const Pulse> pulses) { return verify_impl(pulses, std::nullopt); }

ChainCheck verify_chain(std::span<const Pulse> pulses, const BeaconParams& params) {
  return verify_impl(pulses, params.period_seconds);
}

std::uint64_t joint_entropy_lower_bound(std::uint64_t k, const BeaconParams& params) {
  if (k == 0) throw Error(Errc::InvalidArgument, "joint entropy needs at least one pulse");
  return k * params.min_entropy_bits;
}

std::string format_pulse_line(const Pulse& p) {
  std::string line = std::to_string(p.index);
  line += ',';
  line += std::to_string(p.timestamp);
  line += ',';
  line += to_hex(p.value);
  line += ',';
  line += to_hex(p.prev_digest);
  line += ',';
  line += to_hex(p.chain_digest);
  return line;
}

namespace {

std::uint64_t parse_u64(std::string_view s) {
  if (s.empty()) throw Error(Errc::DecodeError, "empty integer field");
  std::uint64_t v = 0;
  for (const char c : s) {
    if (c < '0' || c > '9') throw Error(Errc::DecodeError, "bad integer field");
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

}  // namespace

Pulse parse_pulse_line(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (fields.size() != 5) throw Error(Errc::DecodeError, "pulse line needs 5 fields");
  Pulse p;
  p.index = parse_u64(fields[0]);
  p.timestamp = parse_u64(fields[1]);
  p.value = array_from_hex<64>(fields[2]);
  p.prev_digest = array_from_hex<32>(fields[3]);
  p.chain_digest = array_from_hex<32>(fields[4]);
  return p;
}

void write_pulse_file(std::ostream& out, std::span<const Pulse> pulses) {
  for (const auto& p : pulses) out << format_pulse_line(p) << '\n';
}

std::vector<Pulse> read_pulse_file(std::istream& in) {
  std::vector<Pulse> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(parse_pulse_line(line));
  }
  return out;
}

HashChainBeacon::HashChainBeacon(BeaconParams params) : params_(params) { params_.validate(); }

Pulse HashChainBeacon::pulse_at(std::uint64_t index) {
  if (chain_.empty()) chain_.push_back(genesis(params_));
  while (chain_.back().index < index) chain_.push_back(next_pulse(chain_.back(), params_));
  return chain_[index];
}

}  // namespace vzor
