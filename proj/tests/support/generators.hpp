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

#include <cstdint>
#include <random>
#include <vector>

#include "zcsi/wire/command.hpp"
#include "zcsi/wire/csi_frame.hpp"

namespace zcsi::testing {

inline wire::MacAddress random_mac(std::mt19937_64& rng) {
  wire::MacAddress mac;
  for (auto& o : mac.octets) o = static_cast<std::uint8_t>(rng());
  return mac;
}

inline wire::CommandFrame random_command(std::mt19937_64& rng) {
  using namespace zcsi::wire;
  switch (rng() % 6) {
    case 0: return make_command(ReportEnable{(rng() & 1) != 0});
    case 1: return make_command(StaFilter{random_mac(rng)});
    case 2: return make_command(CsiConfig{static_cast<std::uint8_t>(rng())});
    case 3: {
      Ipv4Address ip;
      for (auto& o : ip.octets) o = static_cast<std::uint8_t>(rng());
      return make_command(ReportConfig{ip});
    }
    case 4: return make_command(BandConfig{(rng() & 1) ? Band::k5G : Band::k2G4});
    default: return make_command(CheckAvailability{});
  }
}

// Any frame satisfying the codec's invariants; opaque fields get arbitrary bits.
inline wire::CsiDataFrame random_csi_frame(std::mt19937_64& rng) {
  using namespace zcsi::wire;
  auto any = [&rng]<typename T>(T) { return static_cast<T>(rng()); };
  CsiDataFrame f;
  f.magic = (kCsiMagicHigh << 16) | static_cast<std::uint16_t>(rng());
  f.vendor = any(std::uint8_t{});
  f.chip_id = any(std::uint32_t{});
  f.timestamp_us = rng();
  f.resv = any(std::uint32_t{});
  f.bw = static_cast<std::uint32_t>(rng() % 5);
  f.phy_mode = any(std::uint32_t{});
  f.resv_1 = any(std::uint8_t{});
  f.resv_2 = any(std::uint16_t{});
  f.peer_addr = random_mac(rng);
  for (auto& v : f.rssi) v = any(std::int32_t{});
  for (auto& v : f.resv_3) v = any(std::int32_t{});
  for (auto& v : f.agc_gain) v = any(std::int8_t{});
  f.mcs = any(std::int16_t{});
  f.gi_type = any(std::int8_t{});
  f.coding = any(std::int8_t{});
  f.stbc = any(std::int8_t{});
  f.resv_4 = any(std::int8_t{});
  f.dcm = any(std::int8_t{});
  f.resv_5 = any(std::int8_t{});
  f.resv_6 = rng();
  f.csi_cnt = static_cast<std::int16_t>(1 + rng() % kMaxSubcarriers);
  for (int k = 0; k < f.csi_cnt; ++k) {
    f.csi_i[k] = any(std::int32_t{});
    f.csi_q[k] = any(std::int32_t{});
  }
  return f;
}

}  // namespace zcsi::testing
