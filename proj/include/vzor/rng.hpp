#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace vzor {

/// Seeded stream for one simulator component. Streams with different names
/// are independent; the engine and the bounded-integer mapping are both
/// specified exactly, so output does not depend on the standard library.
class DeterministicRng {
 public:
  DeterministicRng(std::uint64_t seed, std::string_view stream);

  std::uint64_t next_u64() { return engine_(); }
  // inclusive bounds, unbiased (rejection sampling)
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);
  std::int64_t uniform_signed(std::int64_t lo, std::int64_t hi);

 private:
  std::mt19937_64 engine_;
};

}  // namespace vzor
