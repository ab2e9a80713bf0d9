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
#include <stdexcept>
#include <string>

#include "zcsi/emulator/channel_model.hpp"
#include "zcsi/emulator/frame_generator.hpp"
#include "zcsi/wire/command.hpp"

namespace zcsi::cli {

// Bad flag value; maps to the usage exit code.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitProtocol = 2, kExitData = 3 };

// "0x22" or "34"; must fit in the 6-bit frame type field.
std::uint8_t parse_frame_type(const std::string& text);

wire::Band parse_band(const std::string& text);
wire::MacAddress parse_mac(const std::string& text);
wire::Ipv4Address parse_ip(const std::string& text);

// "mac[/bw_code[/mcs]]"
emulator::StationConfig parse_station(const std::string& text);

// "delay:re[:im]"
emulator::Tap parse_tap(const std::string& text);

// Value of a port override variable, or `fallback` when unset. Throws
// UsageError when set but not a valid port.
std::uint16_t env_port(const char* name, std::uint16_t fallback);

inline constexpr const char* kEnvCommandPort = "ZCSI_COMMAND_PORT";
inline constexpr const char* kEnvReportPort = "ZCSI_REPORT_PORT";
inline constexpr const char* kEnvHttpPort = "ZCSI_HTTP_PORT";
inline constexpr std::uint16_t kDefaultHttpPort = 8080;

}  // namespace zcsi::cli
