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
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "zcsi/collector/record.hpp"

namespace zcsi::service {

inline constexpr std::size_t kMaxPlotPoints = 256;

// What the stream and /frames/latest carry for one record. Plot series are
// decimated to at most kMaxPlotPoints with a uniform stride that keeps both
// endpoints.
struct FrameEvent {
  std::uint64_t received_at_us = 0;
  std::string peer_addr;
  std::uint32_t bw_code = 0;
  int bw_mhz = 0;  // 0 for an unknown code
  int mcs = 0;
  std::array<std::int32_t, wire::kChainSlots> rssi{};
  int csi_cnt = 0;
  std::size_t stride = 1;
  std::vector<double> magnitude;
  std::vector<double> phase;
  // Full-resolution samples, only when asked for.
  std::optional<std::vector<std::int32_t>> i;
  std::optional<std::vector<std::int32_t>> q;
};

FrameEvent make_frame_event(const collector::CsiRecord& record, bool include_iq);

nlohmann::json to_json(const FrameEvent& event);

}  // namespace zcsi::service
