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
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <set>

#include "zcsi/collector/record.hpp"
#include "zcsi/wire/csi_frame.hpp"

namespace zcsi::analysis {

struct StatsSnapshot {
  std::uint64_t total_frames = 0;
  std::map<std::uint32_t, std::uint64_t> frames_by_bandwidth;  // bw code -> count
  std::map<int, std::uint64_t> frames_by_mcs;
  // Mean of the nonzero entries seen for each chain; 0 if never populated.
  std::array<double, wire::kChainSlots> avg_rssi_per_chain{};
  double frames_per_second = 0.0;
  std::uint64_t decode_errors = 0;

  bool operator==(const StatsSnapshot&) const = default;
};

// Running counters behind the statistics pane. Not thread-safe; the owner
// serialises access.
class StatsAccumulator {
 public:
  static constexpr std::chrono::microseconds kRateWindow = std::chrono::seconds(5);

  void accumulate(const collector::CsiRecord& record) {
    accumulate(record.frame, record.received_at_us);
  }
  void accumulate(const wire::CsiDataFrame& frame, std::uint64_t received_at_us);
  void record_decode_error() noexcept { ++decode_errors_; }

  // Rate is measured over the window ending at `now_us`, or at the newest
  // frame when omitted.
  StatsSnapshot snapshot(std::optional<std::uint64_t> now_us = std::nullopt) const;

 private:
  std::uint64_t total_ = 0;
  std::uint64_t decode_errors_ = 0;
  std::map<std::uint32_t, std::uint64_t> by_bw_;
  std::map<int, std::uint64_t> by_mcs_;
  std::array<std::int64_t, wire::kChainSlots> rssi_sum_{};
  std::array<std::uint64_t, wire::kChainSlots> rssi_count_{};
  std::multiset<std::uint64_t> recent_us_;
  std::optional<std::uint64_t> first_us_;
  std::uint64_t latest_us_ = 0;
};

}  // namespace zcsi::analysis
