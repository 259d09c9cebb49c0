#include <gtest/gtest.h>

#include "vzor/bytes.hpp"
#include "vzor/types.hpp"

namespace vzor {
namespace {

TEST(FixedPoint, ParsesDecimalStrings) {
  EXPECT_EQ(eth("0.15"), static_cast<Wei>(150'000'000'000'000'000LL));
  EXPECT_EQ(eth("1"), kWeiPerEth);
  EXPECT_EQ(price("2000.5"), 200'050'000'000LL);
  EXPECT_EQ(price("-3"), -300'000'000LL);
  EXPECT_EQ(seconds("0.83"), 830'000);
  EXPECT_EQ(parse_fixed("1.2300", 2), 123);
}

TEST(FixedPoint, RejectsMalformedInput) {
  EXPECT_THROW(parse_fixed("", 2), Error);
  EXPECT_THROW(parse_fixed("-", 2), Error);
  EXPECT_THROW(parse_fixed(".", 2), Error);
  EXPECT_THROW(parse_fixed("1.234", 2), Error);
  EXPECT_THROW(parse_fixed("1e5", 2), Error);
  EXPECT_THROW(parse_fixed("99999999999999999999999999999999999999999", 0), Error);
}

TEST(FixedPoint, FormatRoundTrips) {
  for (const char* text : {"0", "0.15", "1.5", "2000", "-7.25", "0.00000001"}) {
    EXPECT_EQ(format_fixed(parse_fixed(text, 8), 8), text);
  }
  EXPECT_EQ(format_fixed(150'000'000'000'000'000LL, 18), "0.15");
  EXPECT_EQ(to_string_i128(-kWeiPerEth * 1000), "-1000000000000000000000");
}

TEST(Bytes, HexRoundTripAndErrors) {
  const Bytes b{0x00, 0xab, 0xff};
  EXPECT_EQ(to_hex(b), "00abff");
  EXPECT_EQ(from_hex("00ABff"), b);
  EXPECT_THROW(from_hex("abc"), Error);
  EXPECT_THROW(from_hex("zz"), Error);
  EXPECT_THROW(array_from_hex<4>("00ab"), Error);
}

TEST(Bytes, WriterIsBigEndianAndReaderDetectsTruncation) {
  ByteWriter w;
  w.u32(0x01020304).u64(5).i64(-1);
  const Bytes& b = w.bytes();
  ASSERT_EQ(b.size(), 20u);
  EXPECT_EQ(b[0], 0x01);
  EXPECT_EQ(b[3], 0x04);
  EXPECT_EQ(b[11], 0x05);
  ByteReader r(b);
  EXPECT_EQ(r.u32(), 0x01020304u);
  EXPECT_EQ(r.u64(), 5u);
  EXPECT_EQ(r.i64(), -1);
  EXPECT_TRUE(r.at_end());
  EXPECT_THROW(r.u8(), Error);
}

}  // namespace
}  // namespace vzor
