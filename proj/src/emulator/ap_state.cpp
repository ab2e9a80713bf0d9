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

#include "zcsi/emulator/ap_state.hpp"

#include <algorithm>

#include "zcsi/wire/error.hpp"

namespace zcsi::emulator {

std::string_view to_string(ApPhase phase) noexcept {
  switch (phase) {
    case ApPhase::kBooted: return "booted";
    case ApPhase::kBandSet: return "band_set";
    case ApPhase::kConfigured: return "configured";
    case ApPhase::kEnabled: return "enabled";
  }
  return "unknown";
}

std::string_view to_string(RejectReason reason) noexcept {
  switch (reason) {
    case RejectReason::kBadMagic: return "bad_magic";
    case RejectReason::kMalformed: return "malformed";
    case RejectReason::kBandLocked: return "band_locked";
    case RejectReason::kOutOfOrder: return "out_of_order";
    case RejectReason::kReportingActive: return "reporting_active";
  }
  return "unknown";
}

bool ApState::admits(const wire::MacAddress& mac) const {
  return filter.empty() || std::find(filter.begin(), filter.end(), mac) != filter.end();
}

namespace {

struct Applier {
  ApState& s;
  const HandlingOptions& opt;
  std::optional<std::vector<std::uint8_t>>& reply;

  std::optional<RejectReason> operator()(const wire::BandConfig& c) {
    if (s.locked_band && *s.locked_band != c.band) return RejectReason::kBandLocked;
    if (s.reporting) {
      if (opt.strict_ordering) return RejectReason::kReportingActive;
      s.reporting = false;
    }
    s.locked_band = c.band;
    s.phase = ApPhase::kBandSet;
    s.frame_type.reset();
    s.filter.clear();
    return std::nullopt;
  }

  std::optional<RejectReason> operator()(const wire::CsiConfig& c) {
    if (opt.strict_ordering && s.phase != ApPhase::kBandSet && s.phase != ApPhase::kConfigured) {
      return s.reporting ? RejectReason::kReportingActive : RejectReason::kOutOfOrder;
    }
    s.frame_type = c.frame_type;
    if (s.phase < ApPhase::kConfigured) s.phase = ApPhase::kConfigured;
    return std::nullopt;
  }

  std::optional<RejectReason> operator()(const wire::ReportEnable& c) {
    if (c.enable) {
      if (opt.strict_ordering && s.phase != ApPhase::kConfigured && s.phase != ApPhase::kEnabled) {
        return RejectReason::kOutOfOrder;
      }
      s.phase = ApPhase::kEnabled;
      s.reporting = true;
    } else {
      if (opt.strict_ordering && s.phase != ApPhase::kEnabled) return RejectReason::kOutOfOrder;
      s.reporting = false;
    }
    return std::nullopt;
  }

  std::optional<RejectReason> operator()(const wire::StaFilter& c) {
    if (std::find(s.filter.begin(), s.filter.end(), c.mac) != s.filter.end()) return std::nullopt;
    if (s.filter.size() == kMaxFilterEntries) s.filter.erase(s.filter.begin());
    s.filter.push_back(c.mac);
    return std::nullopt;
  }

  std::optional<RejectReason> operator()(const wire::ReportConfig& c) {
    s.target_ip = c.target_ip;
    return std::nullopt;
  }

  std::optional<RejectReason> operator()(const wire::CheckAvailability&) {
    reply = std::vector<std::uint8_t>{'O', 'K'};
    return std::nullopt;
  }
};

}  // namespace

CommandOutcome handle_command(const ApState& state, std::span<const std::uint8_t> datagram,
                              const wire::Ipv4Address& sender, const HandlingOptions& options) {
  CommandOutcome out{state, std::nullopt, std::nullopt, std::nullopt};
  wire::CommandFrame frame;
  try {
    frame = wire::decode_command(datagram);
  } catch (const wire::WireError& e) {
    out.rejection =
        e.code() == wire::WireErrc::kBadMagic ? RejectReason::kBadMagic : RejectReason::kMalformed;
    return out;
  }
  out.type = frame.type;

  ApState next = state;
  next.last_sender = sender;
  out.rejection = std::visit(Applier{next, options, out.reply}, frame.payload);
  if (out.rejection) {
    out.state.last_sender = sender;
    out.reply.reset();
  } else {
    out.state = std::move(next);
  }
  return out;
}

ApState reboot(const ApState&) { return ApState{}; }

}  // namespace zcsi::emulator
