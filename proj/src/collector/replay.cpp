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

#include "zcsi/collector/replay.hpp"

#include <chrono>
#include <stdexcept>
#include <thread>

#include "zcsi/collector/capture_file.hpp"
#include "zcsi/net/udp_socket.hpp"

namespace zcsi::collector {

ReplayResult replay_capture(const std::filesystem::path& path, const ReplayOptions& options) {
  if (!(options.rate > 0.0)) throw std::invalid_argument("replay rate must be positive");

  CaptureReader reader(path);
  auto socket = net::UdpSocket::bind(
      options.source.value_or(wire::Endpoint{wire::Ipv4Address::any(), 0}));

  ReplayResult result;
  std::optional<std::uint64_t> first_us;
  const auto start = std::chrono::steady_clock::now();
  while (auto rec = reader.next()) {
    if (!first_us) first_us = rec->received_at_us;
    const auto offset_us =
        rec->received_at_us > *first_us ? rec->received_at_us - *first_us : std::uint64_t{0};
    const auto due = start + std::chrono::microseconds(static_cast<std::int64_t>(
                                 static_cast<double>(offset_us) / options.rate));
    std::this_thread::sleep_until(due);
    socket.send_to(rec->raw, options.target);
    ++result.datagrams_sent;
  }
  return result;
}

}  // namespace zcsi::collector
