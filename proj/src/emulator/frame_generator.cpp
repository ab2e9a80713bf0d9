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

#include "zcsi/emulator/frame_generator.hpp"

#include <random>
#include <stdexcept>

namespace zcsi::emulator {

namespace {

std::mt19937_64 frame_rng(std::uint64_t seed, std::uint64_t tick, std::size_t station) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(tick), static_cast<std::uint32_t>(tick >> 32),
                    static_cast<std::uint32_t>(station)};
  return std::mt19937_64(seq);
}

}  // namespace

wire::CsiDataFrame generate_frame(const GeneratorConfig& config, const ApState& state,
                                  std::size_t station, std::uint64_t now_us, std::uint64_t tick) {
  const StationConfig& sta = config.stations.at(station);
  if (!state.reporting) throw std::logic_error("generate_frame: reporting is off");
  if (!state.admits(sta.mac)) throw std::logic_error("generate_frame: station filtered out");
  auto bw = wire::Bandwidth::from_code(sta.bw_code);
  if (!bw) throw std::invalid_argument("station bandwidth code out of range");

  auto rng = frame_rng(config.rng_seed, tick, station);
  wire::CsiDataFrame f;
  f.timestamp_us = now_us;
  f.bw = sta.bw_code;
  f.peer_addr = sta.mac;
  f.mcs = sta.mcs;
  f.csi_cnt = static_cast<std::int16_t>(bw->max_subcarriers());

  std::uniform_int_distribution<int> jitter(-config.rssi_jitter, config.rssi_jitter);
  for (std::size_t c = 0; c < wire::kChainSlots; ++c) {
    if (sta.rssi_baseline[c] == 0) continue;
    int v = sta.rssi_baseline[c] + jitter(rng);
    // Keep active chains distinguishable from unused (zero) ones.
    f.rssi[c] = v == 0 ? -1 : v;
  }
  synthesize(config.channel, f.csi_cnt, rng, f.csi_i, f.csi_q);
  return f;
}

std::vector<std::size_t> eligible_stations(const GeneratorConfig& config, const ApState& state) {
  std::vector<std::size_t> out;
  if (!state.reporting) return out;
  for (std::size_t k = 0; k < config.stations.size(); ++k) {
    if (state.admits(config.stations[k].mac)) out.push_back(k);
  }
  return out;
}

}  // namespace zcsi::emulator
