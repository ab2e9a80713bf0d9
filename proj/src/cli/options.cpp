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

#include "zcsi/cli/options.hpp"

#include <charconv>
#include <cstdlib>
#include <string_view>

namespace zcsi::cli {

namespace {

template <typename T>
bool parse_number(std::string_view s, T& out, int base = 10) {
  if (s.empty()) return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out, base);
  return ec == std::errc{} && p == s.data() + s.size();
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

}  // namespace

std::uint8_t parse_frame_type(const std::string& text) {
  std::string_view s(text);
  unsigned v = 0;
  bool ok = (s.size() > 2 && (s.substr(0, 2) == "0x" || s.substr(0, 2) == "0X"))
                ? parse_number(s.substr(2), v, 16)
                : parse_number(s, v);
  if (!ok || v > 0x3F) throw UsageError("frame type must be 0..0x3f, got '" + text + "'");
  return static_cast<std::uint8_t>(v);
}

wire::Band parse_band(const std::string& text) {
  if (text == "2.4g") return wire::Band::k2G4;
  if (text == "5g") return wire::Band::k5G;
  throw UsageError("band must be 2.4g or 5g, got '" + text + "'");
}

wire::MacAddress parse_mac(const std::string& text) {
  auto m = wire::MacAddress::parse(text);
  if (!m) throw UsageError("not a MAC address: '" + text + "'");
  return *m;
}

wire::Ipv4Address parse_ip(const std::string& text) {
  auto a = wire::Ipv4Address::parse(text);
  if (!a) throw UsageError("not an IPv4 address: '" + text + "'");
  return *a;
}

emulator::StationConfig parse_station(const std::string& text) {
  emulator::StationConfig s;
  auto first = text.find('/');
  s.mac = parse_mac(text.substr(0, first));
  if (first == std::string::npos) return s;
  auto second = text.find('/', first + 1);
  auto bw = text.substr(first + 1, second == std::string::npos ? std::string::npos : second - first - 1);
  if (!parse_number(bw, s.bw_code) || s.bw_code > 4) throw UsageError("station bw code must be 0..4: '" + text + "'");
  if (second == std::string::npos) return s;
  if (!parse_number(std::string_view(text).substr(second + 1), s.mcs) || s.mcs < 0) {
    throw UsageError("station mcs must be a non-negative integer: '" + text + "'");
  }
  return s;
}

emulator::Tap parse_tap(const std::string& text) {
  emulator::Tap t;
  auto a = text.find(':');
  if (a == std::string::npos) throw UsageError("tap must be delay:re[:im]: '" + text + "'");
  auto b = text.find(':', a + 1);
  double re = 0, im = 0;
  bool ok = parse_number(std::string_view(text).substr(0, a), t.delay_samples) &&
            parse_double(text.substr(a + 1, b == std::string::npos ? std::string::npos : b - a - 1), re) &&
            (b == std::string::npos || parse_double(text.substr(b + 1), im));
  if (!ok) throw UsageError("tap must be delay:re[:im]: '" + text + "'");
  t.amplitude = {re, im};
  return t;
}

std::uint16_t env_port(const char* name, std::uint16_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  std::uint16_t port = 0;
  if (!parse_number(std::string_view(v), port)) {
    throw UsageError(std::string(name) + " is not a port number: '" + v + "'");
  }
  return port;
}

}  // namespace zcsi::cli
