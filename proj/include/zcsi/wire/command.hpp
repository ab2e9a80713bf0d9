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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "zcsi/wire/addresses.hpp"

namespace zcsi::wire {

// Every configuration datagram starts with this value as a little-endian u64.
inline constexpr std::uint64_t kCommandMagic = 0x00000000CAFE2025ull;
inline constexpr std::size_t kCommandHeaderSize = 9;

inline constexpr std::uint16_t kDefaultCommandPort = 8021;
inline constexpr std::uint16_t kDefaultReportPort = 8023;
inline constexpr std::uint16_t kDefaultReportSourcePort = 8024;

// The AP collects CSI on exactly one band per boot.
enum class Band : std::uint8_t { k2G4 = 0, k5G = 1 };

std::string_view to_string(Band band) noexcept;

enum class CommandType : std::uint8_t {
  kReportEnable = 0x1,
  kStaFilter = 0x2,
  kCsiConfig = 0x3,
  kReportConfig = 0x4,
  kBandConfig = 0x5,
  kCheckAvailability = 0x6,
};

std::string_view to_string(CommandType type) noexcept;

struct ReportEnable {
  bool enable = false;
  bool operator==(const ReportEnable&) const = default;
};

struct StaFilter {
  MacAddress mac;
  bool operator==(const StaFilter&) const = default;
};

struct CsiConfig {
  std::uint8_t frame_type = 0x22;
  bool operator==(const CsiConfig&) const = default;
};

struct ReportConfig {
  Ipv4Address target_ip;
  bool operator==(const ReportConfig&) const = default;
};

struct BandConfig {
  Band band = Band::k5G;
  bool operator==(const BandConfig&) const = default;
};

struct CheckAvailability {
  bool operator==(const CheckAvailability&) const = default;
};

using CommandPayload =
    std::variant<ReportEnable, StaFilter, CsiConfig, ReportConfig, BandConfig, CheckAvailability>;

// The type byte that `payload` naturally carries.
CommandType command_type_of(const CommandPayload& payload) noexcept;

struct CommandFrame {
  std::uint64_t magic = kCommandMagic;
  CommandType type = CommandType::kCheckAvailability;
  CommandPayload payload = CheckAvailability{};

  bool operator==(const CommandFrame&) const = default;
};

// Builds a frame whose type byte agrees with the payload.
CommandFrame make_command(CommandPayload payload);

// Fixed on-wire size (header included) for a command type.
std::size_t wire_size(CommandType type) noexcept;

// Throws WireError{kTypeMismatch} when `type` disagrees with the payload
// alternative, WireError{kBadMagic} when magic is not kCommandMagic.
std::vector<std::uint8_t> encode_command(const CommandFrame& frame);

// Throws WireError with kBadMagic, kUnknownType, kTruncatedPayload,
// kBadLength (trailing bytes) or kInvalidField (enable/band value outside {0,1}).
CommandFrame decode_command(std::span<const std::uint8_t> data);

// Packs 802.11 Type (2 bits) and Subtype (4 bits) subfields as
// 0 0 B7 B6 B5 B4 B3 B2. Throws std::out_of_range on wide inputs.
std::uint8_t frame_type_from_subfields(unsigned type2, unsigned subtype4);

inline constexpr std::uint8_t kQosDataFrameType = 0x22;

}  // namespace zcsi::wire
