#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace vzor {

using Epoch = std::uint64_t;
using ReporterId = std::uint32_t;

// Prices are fixed-point integers scaled by 10^8 (quote-asset minor units).
using Price = std::int64_t;
inline constexpr unsigned kPriceDecimals = 8;
inline constexpr Price kPriceScale = 100'000'000;

// Stake amounts in wei (ETH x 10^18). A 50-reporter registry with tens of ETH
// each overflows 64 bits, so the ledger works in 128-bit integers.
__extension__ typedef __int128 Wei;
inline constexpr unsigned kWeiDecimals = 18;
inline constexpr Wei kWeiPerEth = static_cast<Wei>(1'000'000'000'000'000'000LL);

// Simulated time in integer microseconds.
using Micros = std::int64_t;
inline constexpr Micros kMicrosPerSecond = 1'000'000;

/// Parses a non-negative or negative decimal string ("0.15", "-3", "2000.5")
/// into a fixed-point integer with `decimals` fractional digits. Rejects
/// inputs carrying more fractional digits than representable.
Wei parse_fixed(std::string_view text, unsigned decimals);

/// Formats a fixed-point integer as a decimal string, trimming trailing
/// fractional zeros ("150000000000000000", 18 -> "0.15").
std::string format_fixed(Wei value, unsigned decimals);

std::string to_string_i128(Wei value);

inline Wei eth(std::string_view text) { return parse_fixed(text, kWeiDecimals); }
inline Price price(std::string_view text) { return static_cast<Price>(parse_fixed(text, kPriceDecimals)); }
inline Micros seconds(std::string_view text) { return static_cast<Micros>(parse_fixed(text, 6)); }

inline double to_seconds(Micros us) { return static_cast<double>(us) / static_cast<double>(kMicrosPerSecond); }

}  // namespace vzor
