// Copyright 2026 The zcsi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "layout_oracle.hpp"
#include "zcsi/wire/csi_frame.hpp"
#include "zcsi/wire/error.hpp"

namespace zcsi::wire {
namespace {

using Bytes = std::vector<std::uint8_t>;
namespace off = testing::csi_offset;

WireErrc decode_error(const Bytes& bytes) {
  try {
    decode_csi_frame(bytes);
  } catch (const WireError& e) {
    return e.code();
  }
  ADD_FAILURE() << "decode unexpectedly succeeded";
  return WireErrc::kTypeMismatch;
}

TEST(CsiFrame, SizeIsFieldWidthSum) {
  EXPECT_EQ(kCsiFrameSize, 4296u);
  EXPECT_EQ(encode_csi_frame(CsiDataFrame{}).size(), 4296u);
}

TEST(CsiFrame, MinimalTwentyMegahertzFrameEncodes) {
  CsiDataFrame f;
  f.bw = 0;
  f.csi_cnt = 64;
  EXPECT_EQ(encode_csi_frame(f), testing::minimal_csi_bytes());
}

TEST(CsiFrame, FieldsLandAtTableOffsets) {
  auto bytes = testing::minimal_csi_bytes();
  testing::poke(bytes, off::kTimestamp, 0x0102030405060708ull, 8);
  testing::poke(bytes, off::kBw, 3, 4);
  testing::poke(bytes, off::kPhyMode, 0xAABBCCDD, 4);
  testing::poke(bytes, off::kResv2, 0xBEEF, 2);
  const std::uint8_t peer[] = {0x0a, 0x19, 0xc6, 0x51, 0x00, 0x12};
  for (int i = 0; i < 6; ++i) bytes[off::kPeerAddr + i] = peer[i];
  testing::poke(bytes, off::kRssi + 4 * 2, static_cast<std::uint32_t>(-45), 4);
  bytes[off::kAgcGain + 1] = static_cast<std::uint8_t>(-3);
  testing::poke(bytes, off::kMcs, 9, 2);
  bytes[off::kGiType] = 1;
  bytes[off::kCoding] = 1;
  bytes[off::kStbc] = 1;
  bytes[off::kDcm] = 1;
  testing::poke(bytes, off::kResv6, 0x1122334455667788ull, 8);
  testing::poke(bytes, off::kCsiCnt, 512, 2);
  testing::poke(bytes, off::kCsiI + 4 * 511, static_cast<std::uint32_t>(-32768), 4);
  testing::poke(bytes, off::kCsiQ, 32767, 4);

  auto f = decode_csi_frame(bytes);
  EXPECT_EQ(f.magic, 0xCAFE0001u);
  EXPECT_EQ(f.vendor, 2);
  EXPECT_EQ(f.chip_id, 1u);
  EXPECT_EQ(f.timestamp_us, 0x0102030405060708ull);
  EXPECT_EQ(f.bw, 3u);
  ASSERT_TRUE(f.bandwidth());
  EXPECT_EQ(f.bandwidth()->mhz(), 160);
  EXPECT_EQ(f.phy_mode, 0xAABBCCDDu);
  EXPECT_EQ(f.resv_2, 0xBEEF);
  EXPECT_EQ(f.peer_addr.to_string(), "0a:19:c6:51:00:12");
  EXPECT_EQ(f.rssi[2], -45);
  EXPECT_EQ(f.agc_gain[1], -3);
  EXPECT_EQ(f.mcs, 9);
  EXPECT_EQ(f.gi_type, 1);
  EXPECT_EQ(f.coding, 1);
  EXPECT_EQ(f.stbc, 1);
  EXPECT_EQ(f.dcm, 1);
  EXPECT_EQ(f.resv_6, 0x1122334455667788ull);
  EXPECT_EQ(f.csi_cnt, 512);
  EXPECT_EQ(f.csi_i[511], -32768);
  EXPECT_EQ(f.csi_q[0], 32767);
  EXPECT_EQ(encode_csi_frame(f), bytes);
}

TEST(CsiFrame, OnlyHighHalfOfMagicIsChecked) {
  auto bytes = testing::minimal_csi_bytes();
  Bytes good_magic{0xFE, 0xFF, 0xFE, 0xCA};
  std::copy(good_magic.begin(), good_magic.end(), bytes.begin());
  EXPECT_EQ(decode_csi_frame(bytes).magic, 0xCAFEFFFEu);
  bytes[3] = 0xCB;
  EXPECT_EQ(decode_error(bytes), WireErrc::kBadMagic);
}

TEST(CsiFrame, LengthMustBeExact) {
  auto bytes = testing::minimal_csi_bytes();
  bytes.push_back(0);
  EXPECT_EQ(decode_error(bytes), WireErrc::kBadLength);
  bytes.resize(4295);
  EXPECT_EQ(decode_error(bytes), WireErrc::kBadLength);
  EXPECT_EQ(decode_error({}), WireErrc::kBadLength);
}

TEST(CsiFrame, CsiCountRange) {
  auto bytes = testing::minimal_csi_bytes();
  testing::poke(bytes, off::kCsiCnt, 0, 2);
  EXPECT_EQ(decode_error(bytes), WireErrc::kCsiCountOutOfRange);
  testing::poke(bytes, off::kCsiCnt, 513, 2);
  EXPECT_EQ(decode_error(bytes), WireErrc::kCsiCountOutOfRange);
  testing::poke(bytes, off::kCsiCnt, 0xFFFF, 2);  // -1
  EXPECT_EQ(decode_error(bytes), WireErrc::kCsiCountOutOfRange);
  testing::poke(bytes, off::kCsiCnt, 1, 2);
  EXPECT_NO_THROW(decode_csi_frame(bytes));
}

TEST(CsiFrame, BandwidthCodeAboveFourRejected) {
  auto bytes = testing::minimal_csi_bytes();
  testing::poke(bytes, off::kBw, 5, 4);
  EXPECT_EQ(decode_error(bytes), WireErrc::kInvalidField);
}

TEST(CsiFrame, EncodeRejectsInvariantViolations) {
  CsiDataFrame f;
  f.csi_cnt = 0;
  EXPECT_THROW(encode_csi_frame(f), WireError);
  f.csi_cnt = 64;
  f.magic = 0x12340000;
  EXPECT_THROW(encode_csi_frame(f), WireError);
  f.magic = kCsiMagicEmitted;
  f.bw = 9;
  EXPECT_THROW(encode_csi_frame(f), WireError);
}

TEST(CsiFrame, AnomaliesAreFlaggedNotRejected) {
  auto bytes = testing::minimal_csi_bytes();
  testing::poke(bytes, off::kCsiCnt, 128, 2);  // bw=0 carries at most 64
  auto f = decode_csi_frame(bytes);
  EXPECT_TRUE(inspect_frame(f).count_exceeds_bandwidth);
  EXPECT_FALSE(inspect_frame(f).nonzero_tail);
  f.csi_cnt = 64;
  f.csi_q[100] = 1;
  EXPECT_TRUE(inspect_frame(f).nonzero_tail);
  EXPECT_FALSE(inspect_frame(CsiDataFrame{}).any());
}

TEST(Bandwidth, CodeMapping) {
  const int mhz[] = {20, 40, 80, 160, 160};
  const int tones[] = {64, 128, 256, 512, 512};
  for (std::uint32_t c = 0; c < 5; ++c) {
    auto bw = Bandwidth::from_code(c);
    ASSERT_TRUE(bw);
    EXPECT_EQ(bw->mhz(), mhz[c]);
    EXPECT_EQ(bw->max_subcarriers(), tones[c]);
  }
  EXPECT_TRUE(Bandwidth::from_code(4)->is_80p80());
  EXPECT_FALSE(Bandwidth::from_code(5));
}

TEST(CsiFrame, RoundTripProperty) {
  std::mt19937_64 rng(99);
  for (int n = 0; n < 300; ++n) {
    auto f = testing::random_csi_frame(rng);
    auto bytes = encode_csi_frame(f);
    ASSERT_EQ(bytes.size(), kCsiFrameSize);
    auto back = decode_csi_frame(bytes);
    ASSERT_EQ(back, f);
    ASSERT_EQ(encode_csi_frame(back), bytes);
  }
}

TEST(CsiFrame, TruncationNeverSucceeds) {
  auto bytes = encode_csi_frame(CsiDataFrame{});
  for (std::size_t len = 0; len < bytes.size(); len += 7) {
    Bytes cut(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(len));
    EXPECT_EQ(decode_error(cut), WireErrc::kBadLength);
  }
}

TEST(CsiFrame, ActiveChains) {
  CsiDataFrame f;
  f.rssi[0] = -40;
  f.rssi[2] = -50;
  EXPECT_EQ(active_chain_count(f), 2u);
}

}  // namespace
}  // namespace zcsi::wire
