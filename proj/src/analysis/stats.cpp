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

#include "zcsi/analysis/stats.hpp"

#include <algorithm>

namespace zcsi::analysis {

void StatsAccumulator::accumulate(const wire::CsiDataFrame& frame, std::uint64_t received_at_us) {
  ++total_;
  ++by_bw_[frame.bw];
  ++by_mcs_[frame.mcs];
  for (std::size_t c = 0; c < wire::kChainSlots; ++c) {
    if (frame.rssi[c] != 0) {
      rssi_sum_[c] += frame.rssi[c];
      ++rssi_count_[c];
    }
  }

  first_us_ = first_us_ ? std::min(*first_us_, received_at_us) : received_at_us;
  latest_us_ = std::max(latest_us_, received_at_us);
  recent_us_.insert(received_at_us);
  const auto window = static_cast<std::uint64_t>(kRateWindow.count());
  if (latest_us_ > window) {
    recent_us_.erase(recent_us_.begin(), recent_us_.upper_bound(latest_us_ - window));
  }
}

StatsSnapshot StatsAccumulator::snapshot(std::optional<std::uint64_t> now_us) const {
  StatsSnapshot s;
  s.total_frames = total_;
  s.frames_by_bandwidth = by_bw_;
  s.frames_by_mcs = by_mcs_;
  s.decode_errors = decode_errors_;
  for (std::size_t c = 0; c < wire::kChainSlots; ++c) {
    if (rssi_count_[c] > 0) {
      s.avg_rssi_per_chain[c] =
          static_cast<double>(rssi_sum_[c]) / static_cast<double>(rssi_count_[c]);
    }
  }

  if (first_us_) {
    const std::uint64_t now = std::max(now_us.value_or(latest_us_), latest_us_);
    const auto window = static_cast<std::uint64_t>(kRateWindow.count());
    const std::uint64_t lower = now > window ? now - window : 0;
    const auto in_window = static_cast<double>(
        std::distance(recent_us_.upper_bound(lower), recent_us_.end()));
    const std::uint64_t span = std::min(window, now - *first_us_);
    if (span > 0) s.frames_per_second = in_window * 1e6 / static_cast<double>(span);
  }
  return s;
}

}  // namespace zcsi::analysis
