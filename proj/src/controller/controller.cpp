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

#include "zcsi/controller/controller.hpp"

#include <thread>

namespace zcsi::controller {
namespace {

using Clock = std::chrono::steady_clock;

// Added on top of the configured delay so receive-side timestamps never
// show a gap below it.
constexpr std::chrono::milliseconds kPacingGuard{1};
// Band, config and enable must go out back to back.
constexpr int kMaxConsecutiveGapFactor = 10;

}  // namespace

std::string_view to_string(Phase phase) noexcept {
  switch (phase) {
    case Phase::kIdle: return "idle";
    case Phase::kBandSet: return "band_set";
    case Phase::kConfigured: return "configured";
    case Phase::kEnabled: return "enabled";
    case Phase::kFiltered: return "filtered";
    case Phase::kReporting: return "reporting";
    case Phase::kStopped: return "stopped";
  }
  return "unknown";
}

std::string_view to_string(ControllerErrc code) noexcept {
  switch (code) {
    case ControllerErrc::kBandLocked: return "band_locked";
    case ControllerErrc::kBusy: return "busy";
    case ControllerErrc::kPrecondition: return "precondition";
    case ControllerErrc::kTransport: return "transport";
    case ControllerErrc::kSequenceStalled: return "sequence_stalled";
  }
  return "unknown";
}

bool is_valid_transition(Phase from, Phase to) noexcept {
  switch (to) {
    case Phase::kBandSet: return from != Phase::kReporting;
    case Phase::kConfigured: return from == Phase::kBandSet;
    case Phase::kEnabled: return from == Phase::kConfigured;
    case Phase::kFiltered: return from == Phase::kEnabled;
    case Phase::kReporting: return from == Phase::kFiltered;
    case Phase::kStopped: return from == Phase::kReporting;
    case Phase::kIdle: return false;
  }
  return false;
}

void ControllerConfig::validate() const {
  if (inter_command_delay < kMinInterCommandDelay) {
    throw std::invalid_argument("inter_command_delay must be at least 500 ms");
  }
  if (availability_timeout.count() <= 0) {
    throw std::invalid_argument("availability_timeout must be positive");
  }
  if (availability_retries < 1) throw std::invalid_argument("availability_retries must be >= 1");
}

void SessionPlan::validate() const {
  if (sta_filters.size() > kMaxStaFilters) {
    throw std::invalid_argument("at most 5 STA filters are supported, got " +
                                std::to_string(sta_filters.size()));
  }
}

class Controller::BusyGuard {
 public:
  explicit BusyGuard(Controller& c) : c_(c) {
    if (c_.busy_.exchange(true)) {
      throw ControllerError(ControllerErrc::kBusy, "another operation is in progress", c_.state());
    }
  }
  ~BusyGuard() { c_.busy_.store(false); }

 private:
  Controller& c_;
};

Controller::Controller(ControllerConfig config, ControllerState initial)
    : config_(std::move(config)), socket_(net::UdpSocket::ephemeral()), state_(initial) {
  config_.validate();
}

ControllerState Controller::state() const {
  std::lock_guard lock(state_mu_);
  return state_;
}

void Controller::reset() {
  BusyGuard guard(*this);
  std::lock_guard lock(state_mu_);
  state_ = ControllerState{};
}

void Controller::advance(Phase to) {
  std::lock_guard lock(state_mu_);
  if (!is_valid_transition(state_.phase, to)) {
    throw ControllerError(ControllerErrc::kPrecondition,
                          "illegal transition " + std::string(to_string(state_.phase)) + " -> " +
                              std::string(to_string(to)),
                          state_);
  }
  state_.phase = to;
}

void Controller::paced_send(const wire::CommandFrame& frame) {
  if (last_send_) std::this_thread::sleep_until(*last_send_ + config_.inter_command_delay + kPacingGuard);
  auto bytes = wire::encode_command(frame);
  try {
    socket_.send_to(bytes, config_.ap_endpoint());
  } catch (const net::TransportError& e) {
    throw ControllerError(ControllerErrc::kTransport, e.what(), state());
  }
  // Stamped after the send returns: the next datagram cannot leave earlier
  // than a full delay after this one has been handed to the network.
  last_send_ = Clock::now();
  if (observer_) observer_(frame);
}

void Controller::send_raw(const wire::CommandFrame& frame) {
  BusyGuard guard(*this);
  paced_send(frame);
}

bool Controller::check_availability() {
  BusyGuard guard(*this);
  auto request = wire::make_command(wire::CheckAvailability{});
  for (int attempt = 0; attempt < config_.availability_retries; ++attempt) {
    paced_send(request);
    const auto deadline = Clock::now() + config_.availability_timeout;
    for (;;) {
      auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
      if (left.count() <= 0) break;
      std::optional<net::Datagram> reply;
      try {
        reply = socket_.receive(left);
      } catch (const net::TransportError& e) {
        throw ControllerError(ControllerErrc::kTransport, e.what(), state());
      }
      if (!reply) break;
      if (reply->source.address != config_.ap_address) continue;
      if (reply->payload == std::vector<std::uint8_t>{'O', 'K'}) return true;
      break;  // answered, but not ready
    }
  }
  return false;
}

ControllerState Controller::start_session(const SessionPlan& plan) {
  BusyGuard guard(*this);
  try {
    plan.validate();
  } catch (const std::invalid_argument& e) {
    throw ControllerError(ControllerErrc::kPrecondition, e.what(), state());
  }
  {
    std::lock_guard lock(state_mu_);
    if (state_.phase == Phase::kReporting) {
      throw ControllerError(ControllerErrc::kPrecondition, "a session is already reporting", state_);
    }
    if (state_.locked_band && *state_.locked_band != plan.band) {
      throw ControllerError(ControllerErrc::kBandLocked,
                            "AP is locked to " + std::string(to_string(*state_.locked_band)) +
                                "; reboot it before switching bands",
                            state_);
    }
  }

  paced_send(wire::make_command(wire::BandConfig{plan.band}));
  {
    std::lock_guard lock(state_mu_);
    state_.locked_band = plan.band;
  }
  advance(Phase::kBandSet);

  const auto stall_limit = config_.inter_command_delay * kMaxConsecutiveGapFactor;
  auto send_consecutive = [&](const wire::CommandFrame& frame) {
    const auto previous = *last_send_;
    paced_send(frame);
    if (*last_send_ - previous > stall_limit) {
      throw ControllerError(ControllerErrc::kSequenceStalled,
                            "band, config and enable were not sent back to back", state());
    }
  };

  send_consecutive(wire::make_command(wire::CsiConfig{plan.frame_type}));
  advance(Phase::kConfigured);

  send_consecutive(wire::make_command(wire::ReportEnable{true}));
  advance(Phase::kEnabled);

  for (const auto& mac : plan.sta_filters) paced_send(wire::make_command(wire::StaFilter{mac}));
  advance(Phase::kFiltered);

  paced_send(wire::make_command(wire::ReportConfig{plan.report_target_ip}));
  advance(Phase::kReporting);
  return state();
}

ControllerState Controller::stop_session() {
  BusyGuard guard(*this);
  if (state().phase != Phase::kReporting) {
    throw ControllerError(ControllerErrc::kPrecondition, "no session is reporting", state());
  }
  paced_send(wire::make_command(wire::ReportEnable{false}));
  advance(Phase::kStopped);
  return state();
}

}  // namespace zcsi::controller
