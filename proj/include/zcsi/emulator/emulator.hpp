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

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "zcsi/emulator/ap_state.hpp"
#include "zcsi/emulator/frame_generator.hpp"
#include "zcsi/net/udp_socket.hpp"

namespace zcsi::emulator {

struct EmulatorConfig {
  wire::Ipv4Address bind_address = wire::Ipv4Address::any();
  std::uint16_t command_port = wire::kDefaultCommandPort;
  bool strict_ordering = true;
  // 0 binds an ephemeral port.
  std::uint16_t report_source_port = wire::kDefaultReportSourcePort;
  std::uint16_t report_port = wire::kDefaultReportPort;
  double frame_rate_hz = 50.0;
  GeneratorConfig generator;

  // Throws std::invalid_argument.
  void validate() const;
};

struct CommandLogEntry {
  std::chrono::steady_clock::time_point arrived_at;
  wire::Endpoint source;
  std::optional<wire::CommandType> type;
  std::optional<RejectReason> rejection;
};

struct EmulatorCounters {
  std::uint64_t commands = 0;
  std::uint64_t bad_magic = 0;
  std::uint64_t rejected = 0;
  std::uint64_t frames_sent = 0;
  std::uint64_t send_errors = 0;
};

// Runs the AP stand-in: one thread serves commands, one emits frames while
// reporting is on.
class Emulator {
 public:
  // Binds both sockets. Throws net::TransportError or std::invalid_argument.
  explicit Emulator(EmulatorConfig config);
  ~Emulator();
  Emulator(const Emulator&) = delete;
  Emulator& operator=(const Emulator&) = delete;

  void start();
  void stop();

  wire::Endpoint command_endpoint() const;
  wire::Endpoint report_source_endpoint() const;

  ApState state() const;
  void reboot();
  EmulatorCounters counters() const;
  std::vector<CommandLogEntry> command_log() const;
  // Gaps between consecutive command arrivals.
  std::vector<std::chrono::nanoseconds> inter_arrival_times() const;

  // Receives one JSON object per event, without trailing newline.
  void set_log_sink(std::function<void(const std::string&)> sink);

 private:
  void command_loop(std::stop_token st);
  void generator_loop(std::stop_token st);
  void log_event(const std::string& line);

  EmulatorConfig config_;
  net::UdpSocket command_socket_;
  net::UdpSocket report_socket_;

  mutable std::mutex mu_;
  std::condition_variable_any cv_;
  ApState state_;
  std::uint64_t epoch_ = 0;  // bumped on every state change
  EmulatorCounters counters_;
  std::vector<CommandLogEntry> log_;
  std::function<void(const std::string&)> sink_;

  std::jthread command_thread_;
  std::jthread generator_thread_;
};

}  // namespace zcsi::emulator
