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
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace zcsi::wire {

// 802.11 MAC address, octets in transmission order (octets[0] is the first
// group of the printed form).
struct MacAddress {
  std::array<std::uint8_t, 6> octets{};

  static std::optional<MacAddress> parse(std::string_view text);
  std::string to_string() const;

  auto operator<=>(const MacAddress&) const = default;
};

// IPv4 address, octets[0] is the first dotted-quad component.
struct Ipv4Address {
  std::array<std::uint8_t, 4> octets{};

  static std::optional<Ipv4Address> parse(std::string_view text);
  static constexpr Ipv4Address loopback() { return Ipv4Address{{127, 0, 0, 1}}; }
  static constexpr Ipv4Address any() { return Ipv4Address{{0, 0, 0, 0}}; }

  std::string to_string() const;
  // Host-order 32-bit value, first octet most significant.
  std::uint32_t to_host_u32() const noexcept;
  static Ipv4Address from_host_u32(std::uint32_t value) noexcept;

  auto operator<=>(const Ipv4Address&) const = default;
};

struct Endpoint {
  Ipv4Address address;
  std::uint16_t port = 0;

  // "a.b.c.d:port"
  static std::optional<Endpoint> parse(std::string_view text);
  std::string to_string() const;

  auto operator<=>(const Endpoint&) const = default;
};

}  // namespace zcsi::wire
