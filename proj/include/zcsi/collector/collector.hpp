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

#include <cstddef>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "zcsi/analysis/stats.hpp"
#include "zcsi/collector/capture_file.hpp"
#include "zcsi/collector/record.hpp"
#include "zcsi/collector/subscription.hpp"
#include "zcsi/net/udp_socket.hpp"
#include "zcsi/wire/command.hpp"

namespace zcsi::collector {

struct CollectorConfig {
  wire::Endpoint bind{wire::Ipv4Address::any(), wire::kDefaultReportPort};
  std::size_t window_capacity = 4096;
  std::optional<std::set<wire::MacAddress>> mac_allowlist;
  std::optional<std::filesystem::path> capture_path;
  // Reports normally come from port 8024; only enforced when strict.
  bool strict_source_port = false;
  std::uint16_t expected_source_port = wire::kDefaultReportSourcePort;
  std::size_t subscriber_queue_capacity = 256;
};

struct CollectorCounters {
  std::uint64_t datagrams = 0;
  std::uint64_t frames_accepted = 0;
  std::uint64_t decode_errors = 0;
  std::uint64_t filtered_out = 0;
  std::uint64_t source_port_rejected = 0;
  std::uint64_t anomalous_frames = 0;  // accepted, but see wire::inspect_frame
  std::uint64_t capture_write_errors = 0;
  std::uint64_t subscriber_drops = 0;
};

enum class IngestOutcome { kAccepted, kDecodeError, kFilteredOut, kWrongSourcePort };

// Receives CSI report datagrams, keeps the newest `window_capacity` of
// them, appends them to an optional capture file and fans them out to
// subscribers. One receive thread writes; readers take snapshots.
class Collector {
 public:
  // Binds the socket and opens the capture file. Throws net::TransportError
  // when the port is unavailable.
  explicit Collector(CollectorConfig config);
  ~Collector();

  Collector(const Collector&) = delete;
  Collector& operator=(const Collector&) = delete;

  void start();
  void stop();
  bool running() const noexcept { return receiver_.joinable(); }

  wire::Endpoint local_endpoint() const { return socket_.local_endpoint(); }
  const CollectorConfig& config() const noexcept { return config_; }

  // Processes one datagram as if it had arrived on the socket.
  IngestOutcome ingest(std::span<const std::uint8_t> raw, const wire::Endpoint& source,
                       std::uint64_t received_at_us);

  std::vector<RecordPtr> window() const;
  // The newest `n` records, oldest first.
  std::vector<RecordPtr> latest(std::size_t n) const;
  analysis::StatsSnapshot stats() const;
  CollectorCounters counters() const;
  // Set once writing to the capture file has failed; collection continues.
  std::optional<std::string> capture_warning() const;

  std::shared_ptr<Subscription> subscribe(std::optional<std::size_t> capacity = std::nullopt);
  void unsubscribe(const std::shared_ptr<Subscription>& subscription);

 private:
  void receive_loop(std::stop_token stop);
  void deliver(const RecordPtr& record);

  CollectorConfig config_;
  net::UdpSocket socket_;

  mutable std::mutex mu_;
  std::deque<RecordPtr> window_;
  analysis::StatsAccumulator stats_;
  CollectorCounters counters_;
  std::optional<std::string> capture_warning_;

  std::mutex capture_mu_;
  std::unique_ptr<CaptureWriter> capture_;

  mutable std::mutex subs_mu_;
  std::vector<std::shared_ptr<Subscription>> subscribers_;
  std::uint64_t retired_drops_ = 0;

  std::jthread receiver_;
};

std::uint64_t wall_clock_us();

}  // namespace zcsi::collector
