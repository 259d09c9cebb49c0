#include "vzor/rng.hpp"

#include <array>
#include <limits>

#include "vzor/bytes.hpp"
#include "vzor/crypto.hpp"
#include "vzor/errors.hpp"

namespace vzor {

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::string_view stream) {
  ByteWriter w;
  w.u64(seed).raw(std::span(reinterpret_cast<const std::uint8_t*>(stream.data()), stream.size()));
  const Digest d = sha256_tagged("VZOR/rng/v1", w.bytes());
  std::array<std::uint32_t, 8> words{};
  for (std::size_t i = 0; i < words.size(); ++i) {
    words[i] = (std::uint32_t{d[4 * i]} << 24) | (std::uint32_t{d[4 * i + 1]} << 16) |
               (std::uint32_t{d[4 * i + 2]} << 8) | std::uint32_t{d[4 * i + 3]};
  }
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

}  // namespace

DeterministicRng::DeterministicRng(std::uint64_t seed, std::string_view stream)
    : engine_(make_engine(seed, stream)) {}

std::uint64_t DeterministicRng::uniform(std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi) throw Error(Errc::InvalidArgument, "uniform: lo > hi");
  const std::uint64_t span = hi - lo;
  if (span == std::numeric_limits<std::uint64_t>::max()) return next_u64();
  const std::uint64_t range = span + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return lo + x % range;
}

std::int64_t DeterministicRng::uniform_signed(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw Error(Errc::InvalidArgument, "uniform: lo > hi");
  const auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + uniform(0, span));
}

}  // namespace vzor
