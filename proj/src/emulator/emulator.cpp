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

#include "zcsi/emulator/emulator.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "zcsi/wire/csi_frame.hpp"

namespace zcsi::emulator {

namespace {

std::uint64_t wall_us() {
  return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::microseconds>(
                                        std::chrono::system_clock::now().time_since_epoch())
                                        .count());
}

nlohmann::json state_json(const ApState& s) {
  nlohmann::json j;
  j["phase"] = to_string(s.phase);
  j["locked_band"] = s.locked_band ? nlohmann::json(to_string(*s.locked_band)) : nullptr;
  j["reporting"] = s.reporting;
  auto filter = nlohmann::json::array();
  for (const auto& m : s.filter) filter.push_back(m.to_string());
  j["filter"] = filter;
  auto target = s.report_target();
  j["target_ip"] = target ? nlohmann::json(target->to_string()) : nullptr;
  return j;
}

}  // namespace

void EmulatorConfig::validate() const {
  if (!(frame_rate_hz > 0.0) || !std::isfinite(frame_rate_hz)) {
    throw std::invalid_argument("frame_rate_hz must be positive");
  }
  if (generator.stations.empty()) throw std::invalid_argument("at least one station is required");
  for (const auto& s : generator.stations) {
    if (!wire::Bandwidth::from_code(s.bw_code)) {
      throw std::invalid_argument("station bandwidth code must be 0..4");
    }
  }
  generator.channel.validate();
}

Emulator::Emulator(EmulatorConfig config)
    : config_((config.validate(), std::move(config))),
      command_socket_(net::UdpSocket::bind({config_.bind_address, config_.command_port})),
      report_socket_(net::UdpSocket::bind({config_.bind_address, config_.report_source_port})) {
  command_socket_.enable_kernel_timestamps();
}

Emulator::~Emulator() { stop(); }

void Emulator::start() {
  if (command_thread_.joinable()) return;
  command_thread_ = std::jthread([this](std::stop_token st) { command_loop(st); });
  generator_thread_ = std::jthread([this](std::stop_token st) { generator_loop(st); });
}

void Emulator::stop() {
  command_thread_.request_stop();
  generator_thread_.request_stop();
  cv_.notify_all();
  if (command_thread_.joinable()) command_thread_.join();
  if (generator_thread_.joinable()) generator_thread_.join();
  command_thread_ = {};
  generator_thread_ = {};
}

wire::Endpoint Emulator::command_endpoint() const { return command_socket_.local_endpoint(); }
wire::Endpoint Emulator::report_source_endpoint() const { return report_socket_.local_endpoint(); }

ApState Emulator::state() const {
  std::lock_guard lock(mu_);
  return state_;
}

void Emulator::reboot() {
  ApState snapshot;
  {
    std::lock_guard lock(mu_);
    state_ = emulator::reboot(state_);
    ++epoch_;
    snapshot = state_;
  }
  cv_.notify_all();
  auto j = state_json(snapshot);
  j["event"] = "reboot";
  log_event(j.dump());
}

EmulatorCounters Emulator::counters() const {
  std::lock_guard lock(mu_);
  return counters_;
}

std::vector<CommandLogEntry> Emulator::command_log() const {
  std::lock_guard lock(mu_);
  return log_;
}

std::vector<std::chrono::nanoseconds> Emulator::inter_arrival_times() const {
  auto entries = command_log();
  std::vector<std::chrono::nanoseconds> gaps;
  for (std::size_t k = 1; k < entries.size(); ++k) {
    gaps.push_back(entries[k].arrived_at - entries[k - 1].arrived_at);
  }
  return gaps;
}

void Emulator::set_log_sink(std::function<void(const std::string&)> sink) {
  std::lock_guard lock(mu_);
  sink_ = std::move(sink);
}

void Emulator::log_event(const std::string& line) {
  std::function<void(const std::string&)> sink;
  {
    std::lock_guard lock(mu_);
    sink = sink_;
  }
  if (sink) sink(line);
}

void Emulator::command_loop(std::stop_token st) {
  const HandlingOptions options{config_.strict_ordering};
  while (!st.stop_requested()) {
    auto dg = command_socket_.receive(std::chrono::milliseconds(50));
    if (!dg) continue;
    auto arrived = std::chrono::steady_clock::now();

    CommandOutcome out;
    bool changed = false;
    {
      std::lock_guard lock(mu_);
      out = handle_command(state_, dg->payload, dg->source.address, options);
      changed = !(out.state == state_);
      state_ = out.state;
      if (changed) ++epoch_;
      if (out.rejection == RejectReason::kBadMagic) {
        ++counters_.bad_magic;
      } else {
        ++counters_.commands;
        if (out.rejection) ++counters_.rejected;
        log_.push_back({arrived, dg->source, out.type, out.rejection});
      }
    }
    if (changed) cv_.notify_all();
    if (out.reply) {
      try {
        command_socket_.send_to(*out.reply, dg->source);
      } catch (const net::TransportError&) {
        // The sender went away; nothing to do.
      }
    }

    nlohmann::json j;
    j["source"] = dg->source.to_string();
    if (out.type) j["cmd_type"] = static_cast<int>(*out.type);
    if (out.rejection) {
      j["event"] = "rejected";
      j["reason"] = to_string(*out.rejection);
    } else {
      j["event"] = changed ? "state_changed" : "command";
    }
    j["state"] = state_json(out.state);
    log_event(j.dump());
  }
}

void Emulator::generator_loop(std::stop_token st) {
  using clock = std::chrono::steady_clock;
  const auto period = std::chrono::duration_cast<clock::duration>(
      std::chrono::duration<double>(1.0 / config_.frame_rate_hz));
  std::uint64_t tick = 0;

  std::unique_lock lock(mu_);
  while (!st.stop_requested()) {
    cv_.wait(lock, st, [&] { return state_.reporting; });
    if (st.stop_requested()) break;

    // Ticks are scheduled from the start of the reporting run so the rate
    // does not drift with send latency.
    const auto run_start = clock::now();
    std::uint64_t n = 0;
    while (!st.stop_requested() && state_.reporting) {
      ApState snapshot = state_;
      auto stations = eligible_stations(config_.generator, snapshot);
      auto target = snapshot.report_target();
      lock.unlock();

      std::uint64_t sent = 0, failed = 0;
      if (target) {
        const wire::Endpoint to{*target, config_.report_port};
        for (auto idx : stations) {
          auto frame = generate_frame(config_.generator, snapshot, idx, wall_us(), tick);
          try {
            report_socket_.send_to(wire::encode_csi_frame(frame), to);
            ++sent;
          } catch (const net::TransportError&) {
            ++failed;
          }
        }
      }
      ++tick;
      ++n;

      lock.lock();
      counters_.frames_sent += sent;
      counters_.send_errors += failed;
      const auto epoch = epoch_;
      const auto next = run_start + n * period;
      // Wake early on any state change so a stop takes effect at once.
      cv_.wait_until(lock, st, next, [&] { return epoch_ != epoch; });
      if (epoch_ != epoch && state_.reporting && clock::now() < next) {
        // State changed but reporting continues: keep the schedule.
        cv_.wait_until(lock, st, next, [&] { return !state_.reporting; });
      }
    }
  }
}

}  // namespace zcsi::emulator
