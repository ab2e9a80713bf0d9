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

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "zcsi/wire/addresses.hpp"

namespace zcsi::wire {

inline constexpr std::size_t kCsiHeaderSize = 200;
inline constexpr std::size_t kMaxSubcarriers = 512;
inline constexpr std::size_t kCsiFrameSize = kCsiHeaderSize + 2 * kMaxSubcarriers * 4;  // 4296
inline constexpr std::size_t kChainSlots = 16;

// Only the high half is fixed by the AP; the low half is left free.
inline constexpr std::uint32_t kCsiMagicHigh = 0xCAFE;
inline constexpr std::uint32_t kCsiMagicEmitted = 0xCAFE0001;
inline constexpr std::uint8_t kVendorZte = 2;
inline constexpr std::uint32_t kChipAx3000 = 1;

// Bandwidth code carried in the report's `bw` field.
class Bandwidth {
 public:
  static std::optional<Bandwidth> from_code(std::uint32_t code) noexcept;

  std::uint8_t code() const noexcept { return code_; }
  // 4 is 160 MHz built from two 80 MHz segments.
  int mhz() const noexcept;
  int max_subcarriers() const noexcept;
  bool is_80p80() const noexcept { return code_ == 4; }

  auto operator<=>(const Bandwidth&) const = default;

 private:
  explicit constexpr Bandwidth(std::uint8_t code) : code_(code) {}
  std::uint8_t code_;
};

// One CSI report as sent by the AP to the collector: 200 bytes of radio
// metadata followed by 512 I and 512 Q samples, little-endian, packed.
struct CsiDataFrame {
  std::uint32_t magic = kCsiMagicEmitted;
  std::uint8_t vendor = kVendorZte;
  std::uint32_t chip_id = kChipAx3000;
  std::uint64_t timestamp_us = 0;
  std::uint32_t resv = 0;
  std::uint32_t bw = 0;
  std::uint32_t phy_mode = 0;
  std::uint8_t resv_1 = 0;
  std::uint16_t resv_2 = 0;
  MacAddress peer_addr;
  std::array<std::int32_t, kChainSlots> rssi{};
  std::array<std::int32_t, kChainSlots> resv_3{};
  std::array<std::int8_t, kChainSlots> agc_gain{};
  std::int16_t mcs = 0;
  std::int8_t gi_type = 0;
  std::int8_t coding = 0;
  std::int8_t stbc = 0;
  std::int8_t resv_4 = 0;
  std::int8_t dcm = 0;
  std::int8_t resv_5 = 0;
  std::uint64_t resv_6 = 0;
  std::int16_t csi_cnt = 64;
  std::array<std::int32_t, kMaxSubcarriers> csi_i{};
  std::array<std::int32_t, kMaxSubcarriers> csi_q{};

  // Decoded bandwidth; empty when `bw` is outside 0..4.
  std::optional<Bandwidth> bandwidth() const noexcept { return Bandwidth::from_code(bw); }

  bool operator==(const CsiDataFrame&) const = default;
};

// Throws WireError: kBadLength unless exactly kCsiFrameSize bytes, kBadMagic
// when the high 16 bits of magic are not 0xCAFE, kInvalidField when bw > 4,
// kCsiCountOutOfRange when csi_cnt is not in 1..512.
CsiDataFrame decode_csi_frame(std::span<const std::uint8_t> data);

// Same checks as the decoder, then packs to exactly kCsiFrameSize bytes.
std::vector<std::uint8_t> encode_csi_frame(const CsiDataFrame& frame);

// Non-fatal inconsistencies a decoded frame may carry.
struct FrameAnomalies {
  // csi_cnt exceeds what the bandwidth can carry.
  bool count_exceeds_bandwidth = false;
  // Samples beyond csi_cnt are not zero.
  bool nonzero_tail = false;

  bool any() const noexcept { return count_exceeds_bandwidth || nonzero_tail; }
};

FrameAnomalies inspect_frame(const CsiDataFrame& frame) noexcept;

// Number of chains whose rssi entry is nonzero.
std::size_t active_chain_count(const CsiDataFrame& frame) noexcept;

}  // namespace zcsi::wire
