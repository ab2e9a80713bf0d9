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
#include <cstdint>
#include <vector>

#include "zcsi/emulator/ap_state.hpp"
#include "zcsi/emulator/channel_model.hpp"
#include "zcsi/wire/csi_frame.hpp"

namespace zcsi::emulator {

struct StationConfig {
  wire::MacAddress mac;
  std::uint32_t bw_code = 0;
  std::int16_t mcs = 7;
  // Zero entries are inactive chains and stay zero.
  std::array<std::int32_t, wire::kChainSlots> rssi_baseline{-45, -47};
};

struct GeneratorConfig {
  std::vector<StationConfig> stations;
  ChannelModel channel;
  std::uint64_t rng_seed = 0;
  // Uniform jitter added to active rssi chains, +/- this value.
  int rssi_jitter = 2;
};

// Builds the frame for `stations[station]` at `tick`. Same inputs give the
// same frame. Throws std::out_of_range for a bad station index and
// std::invalid_argument for a station with an unknown bandwidth code.
wire::CsiDataFrame generate_frame(const GeneratorConfig& config, const ApState& state,
                                  std::size_t station, std::uint64_t now_us, std::uint64_t tick);

// Stations that would report under `state`, by index.
std::vector<std::size_t> eligible_stations(const GeneratorConfig& config, const ApState& state);

}  // namespace zcsi::emulator
