#include "vzor/types.hpp"

#include <algorithm>
#include <limits>

#include "vzor/errors.hpp"

namespace vzor {

namespace {

constexpr Wei kWeiMax = static_cast<Wei>((static_cast<unsigned __int128>(1) << 127) - 1);

}  // namespace

Wei parse_fixed(std::string_view text, unsigned decimals) {
  auto fail = [&](const char* why) {
    return Error(Errc::InvalidArgument, "bad decimal '" + std::string(text) + "': " + why);
  };
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) throw fail("empty");

  Wei whole = 0;
  bool any_digit = false;
  for (; i < text.size() && text[i] != '.'; ++i) {
    const char c = text[i];
    if (c == '_') continue;
    if (c < '0' || c > '9') throw fail("unexpected character");
    if (whole > (kWeiMax - (c - '0')) / 10) throw fail("overflow");
    whole = whole * 10 + (c - '0');
    any_digit = true;
  }
  Wei frac = 0;
  unsigned frac_digits = 0;
  if (i < text.size()) {
    ++i;  // '.'
    for (; i < text.size(); ++i) {
      const char c = text[i];
      if (c < '0' || c > '9') throw fail("unexpected character");
      if (frac_digits < decimals) {
        frac = frac * 10 + (c - '0');
        ++frac_digits;
      } else if (c != '0') {
        throw fail("too many fractional digits");
      }
      any_digit = true;
    }
  }
  if (!any_digit) throw fail("no digits");

  Wei scale = 1;
  for (unsigned k = 0; k < decimals; ++k) scale *= 10;
  for (unsigned k = frac_digits; k < decimals; ++k) frac *= 10;
  if (whole > (kWeiMax - frac) / scale) throw fail("overflow");
  const Wei value = whole * scale + frac;
  return negative ? -value : value;
}

std::string to_string_i128(Wei value) {
  if (value == 0) return "0";
  const bool negative = value < 0;
  unsigned __int128 mag = negative ? static_cast<unsigned __int128>(-(value + 1)) + 1
                                   : static_cast<unsigned __int128>(value);
  std::string out;
  while (mag > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  }
  if (negative) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

std::string format_fixed(Wei value, unsigned decimals) {
  const bool negative = value < 0;
  std::string digits = to_string_i128(negative ? -value : value);
  if (decimals == 0) return negative ? "-" + digits : digits;
  if (digits.size() <= decimals) digits.insert(0, decimals + 1 - digits.size(), '0');
  std::string whole = digits.substr(0, digits.size() - decimals);
  std::string frac = digits.substr(digits.size() - decimals);
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  std::string out = negative ? "-" : "";
  out += whole;
  if (!frac.empty()) out += "." + frac;
  return out;
}

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::DecodeError: return "DecodeError";
    case Errc::ValueOutOfRange: return "ValueOutOfRange";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::QuorumNotMet: return "QuorumNotMet";
    case Errc::NonMember: return "NonMember";
    case Errc::EpochMismatch: return "EpochMismatch";
    case Errc::DuplicateObservation: return "DuplicateObservation";
    case Errc::MalformedWitness: return "MalformedWitness";
    case Errc::NotInWitness: return "NotInWitness";
    case Errc::UnverifiableScore: return "UnverifiableScore";
    case Errc::RegistryTooSmall: return "RegistryTooSmall";
    case Errc::UnknownOperation: return "UnknownOperation";
    case Errc::InsufficientStake: return "InsufficientStake";
    case Errc::AlreadyRegistered: return "AlreadyRegistered";
    case Errc::UnknownReporter: return "UnknownReporter";
    case Errc::MalformedFraudProof: return "MalformedFraudProof";
    case Errc::UnknownParameter: return "UnknownParameter";
    case Errc::InvalidScenario: return "InvalidScenario";
    case Errc::ConfigParse: return "ConfigParse";
  }
  return "Unknown";
}

}  // namespace vzor
