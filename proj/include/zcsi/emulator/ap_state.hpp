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
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "zcsi/wire/addresses.hpp"
#include "zcsi/wire/command.hpp"

namespace zcsi::emulator {

inline constexpr std::size_t kMaxFilterEntries = 5;

enum class ApPhase { kBooted, kBandSet, kConfigured, kEnabled };

std::string_view to_string(ApPhase phase) noexcept;

struct ApState {
  ApPhase phase = ApPhase::kBooted;
  std::optional<wire::Band> locked_band;
  std::optional<std::uint8_t> frame_type;
  // Oldest first; at most kMaxFilterEntries.
  std::vector<wire::MacAddress> filter;
  // Set by ReportConfig. Until then reports go to the last command sender.
  std::optional<wire::Ipv4Address> target_ip;
  std::optional<wire::Ipv4Address> last_sender;
  bool reporting = false;

  std::optional<wire::Ipv4Address> report_target() const {
    return target_ip ? target_ip : last_sender;
  }
  bool admits(const wire::MacAddress& mac) const;

  bool operator==(const ApState&) const = default;
};

enum class RejectReason { kBadMagic, kMalformed, kBandLocked, kOutOfOrder, kReportingActive };

std::string_view to_string(RejectReason reason) noexcept;

struct CommandOutcome {
  ApState state;
  std::optional<std::vector<std::uint8_t>> reply;
  std::optional<wire::CommandType> type;
  std::optional<RejectReason> rejection;
};

struct HandlingOptions {
  // Reject commands that arrive out of the documented order.
  bool strict_ordering = true;
};

// Applies one command datagram to `state`. Rejections leave the state as it
// was, apart from remembering the sender.
CommandOutcome handle_command(const ApState& state, std::span<const std::uint8_t> datagram,
                              const wire::Ipv4Address& sender, const HandlingOptions& options);

// Power cycle: back to Booted with no band lock, filter or reporting.
ApState reboot(const ApState& state);

}  // namespace zcsi::emulator
