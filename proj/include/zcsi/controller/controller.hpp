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

#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "zcsi/net/udp_socket.hpp"
#include "zcsi/wire/command.hpp"

namespace zcsi::controller {

// The AP needs at least this much time between consecutive commands.
inline constexpr std::chrono::milliseconds kMinInterCommandDelay{500};
inline constexpr std::size_t kMaxStaFilters = 5;

struct ControllerConfig {
  wire::Ipv4Address ap_address{{192, 168, 5, 1}};
  std::uint16_t command_port = wire::kDefaultCommandPort;
  std::chrono::milliseconds inter_command_delay = kMinInterCommandDelay;
  std::chrono::milliseconds availability_timeout{2000};
  int availability_retries = 3;

  // Throws std::invalid_argument.
  void validate() const;
  wire::Endpoint ap_endpoint() const { return {ap_address, command_port}; }
};

struct SessionPlan {
  wire::Band band = wire::Band::k5G;
  std::uint8_t frame_type = wire::kQosDataFrameType;
  std::vector<wire::MacAddress> sta_filters;
  wire::Ipv4Address report_target_ip;

  // Throws std::invalid_argument for more than kMaxStaFilters filters.
  void validate() const;
};

enum class Phase { kIdle, kBandSet, kConfigured, kEnabled, kFiltered, kReporting, kStopped };

std::string_view to_string(Phase phase) noexcept;

struct ControllerState {
  Phase phase = Phase::kIdle;
  std::optional<wire::Band> locked_band;

  bool operator==(const ControllerState&) const = default;
};

// Forward along the mandated order, Reporting -> Stopped, and back to
// BandSet from any phase except Reporting (a new or retried sequence).
bool is_valid_transition(Phase from, Phase to) noexcept;

enum class ControllerErrc { kBandLocked, kBusy, kPrecondition, kTransport, kSequenceStalled };

std::string_view to_string(ControllerErrc code) noexcept;

class ControllerError : public std::runtime_error {
 public:
  ControllerError(ControllerErrc code, const std::string& detail, ControllerState reached)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code),
        reached_(reached) {}

  ControllerErrc code() const noexcept { return code_; }
  // State the controller was left in.
  const ControllerState& reached() const noexcept { return reached_; }

 private:
  ControllerErrc code_;
  ControllerState reached_;
};

// Drives one AP through the configuration sequence over UDP. Commands other
// than CheckAvailability are fire-and-forget; the AP does not acknowledge
// them.
class Controller {
 public:
  using SendObserver = std::function<void(const wire::CommandFrame&)>;

  explicit Controller(ControllerConfig config, ControllerState initial = {});

  // True iff the AP answers "OK" within the timeout on some attempt.
  // Throws ControllerError{kTransport} when the request cannot be sent.
  bool check_availability();

  // Sends BandConfig, CsiConfig, ReportEnable(1), one StaFilter per filter
  // and ReportConfig, paced by inter_command_delay. Returns the new state
  // (Reporting, band locked).
  ControllerState start_session(const SessionPlan& plan);

  // Sends ReportEnable(0). Requires phase Reporting.
  ControllerState stop_session();

  // Encodes and sends one command without touching the session state.
  void send_raw(const wire::CommandFrame& frame);

  // Forget the band lock after the AP has been rebooted.
  void reset();

  ControllerState state() const;
  const ControllerConfig& config() const noexcept { return config_; }

  // Invoked after each datagram leaves the socket.
  void set_send_observer(SendObserver observer) { observer_ = std::move(observer); }

 private:
  class BusyGuard;

  void paced_send(const wire::CommandFrame& frame);
  void advance(Phase to);

  ControllerConfig config_;
  net::UdpSocket socket_;
  SendObserver observer_;

  mutable std::mutex state_mu_;
  ControllerState state_;
  std::atomic<bool> busy_{false};
  std::optional<std::chrono::steady_clock::time_point> last_send_;
};

}  // namespace zcsi::controller
