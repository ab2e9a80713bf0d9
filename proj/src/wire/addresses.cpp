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

#include "zcsi/wire/addresses.hpp"

#include <charconv>
#include <cstdio>

namespace zcsi::wire {
namespace {

std::optional<unsigned> parse_uint(std::string_view s, int base, unsigned max) {
  if (s.empty()) return std::nullopt;
  unsigned value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value, base);
  if (ec != std::errc{} || ptr != s.data() + s.size() || value > max) return std::nullopt;
  return value;
}

}  // namespace

std::optional<MacAddress> MacAddress::parse(std::string_view text) {
  MacAddress mac;
  std::size_t start = 0;
  for (std::size_t i = 0; i < 6; ++i) {
    std::size_t end = i < 5 ? text.find_first_of(":-", start) : text.size();
    if (end == std::string_view::npos) return std::nullopt;
    auto part = text.substr(start, end - start);
    if (part.size() != 2) return std::nullopt;
    auto octet = parse_uint(part, 16, 0xFF);
    if (!octet) return std::nullopt;
    mac.octets[i] = static_cast<std::uint8_t>(*octet);
    start = end + 1;
  }
  return mac;
}

std::string MacAddress::to_string() const {
  char buf[18];
  std::snprintf(buf, sizeof(buf), "%02x:%02x:%02x:%02x:%02x:%02x", octets[0], octets[1],
                octets[2], octets[3], octets[4], octets[5]);
  return buf;
}

std::optional<Ipv4Address> Ipv4Address::parse(std::string_view text) {
  Ipv4Address ip;
  std::size_t start = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    std::size_t end = i < 3 ? text.find('.', start) : text.size();
    if (end == std::string_view::npos) return std::nullopt;
    auto part = text.substr(start, end - start);
    if (part.size() > 3) return std::nullopt;
    auto octet = parse_uint(part, 10, 255);
    if (!octet) return std::nullopt;
    ip.octets[i] = static_cast<std::uint8_t>(*octet);
    start = end + 1;
  }
  return ip;
}

std::string Ipv4Address::to_string() const {
  return std::to_string(octets[0]) + "." + std::to_string(octets[1]) + "." +
         std::to_string(octets[2]) + "." + std::to_string(octets[3]);
}

std::uint32_t Ipv4Address::to_host_u32() const noexcept {
  return (std::uint32_t{octets[0]} << 24) | (std::uint32_t{octets[1]} << 16) |
         (std::uint32_t{octets[2]} << 8) | std::uint32_t{octets[3]};
}

Ipv4Address Ipv4Address::from_host_u32(std::uint32_t value) noexcept {
  return Ipv4Address{{static_cast<std::uint8_t>(value >> 24), static_cast<std::uint8_t>(value >> 16),
                      static_cast<std::uint8_t>(value >> 8), static_cast<std::uint8_t>(value)}};
}

std::optional<Endpoint> Endpoint::parse(std::string_view text) {
  auto colon = text.rfind(':');
  if (colon == std::string_view::npos) return std::nullopt;
  auto ip = Ipv4Address::parse(text.substr(0, colon));
  auto port = parse_uint(text.substr(colon + 1), 10, 0xFFFF);
  if (!ip || !port) return std::nullopt;
  return Endpoint{*ip, static_cast<std::uint16_t>(*port)};
}

std::string Endpoint::to_string() const { return address.to_string() + ":" + std::to_string(port); }

}  // namespace zcsi::wire
