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
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "zcsi/collector/collector.hpp"
#include "zcsi/controller/controller.hpp"

namespace zcsi::service {

// Body of POST /api/session.
struct SessionRequest {
  wire::Band band = wire::Band::k5G;
  std::uint8_t frame_type = wire::kQosDataFrameType;
  std::vector<wire::MacAddress> sta_filters;
  wire::Ipv4Address report_target_ip;
  std::optional<wire::Ipv4Address> ap_address;
};

class RequestError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Throws RequestError naming the offending field.
SessionRequest parse_session_request(const nlohmann::json& body);

struct ServiceConfig {
  wire::Endpoint listen{wire::Ipv4Address::loopback(), 8080};
  // Used for every AP; ap_address in a request overrides the address.
  controller::ControllerConfig controller;
  double max_stream_rate_hz = 30.0;
};

struct HttpResponse {
  unsigned status = 200;
  nlohmann::json body;
};

struct ServiceCounters {
  std::uint64_t http_requests = 0;
  std::uint64_t stream_clients = 0;
  std::uint64_t stream_events = 0;
};

// HTTP JSON API plus the /ws/csi WebSocket stream on one port. Every route
// is also served under /api/v1.
class LiveService {
 public:
  LiveService(ServiceConfig config, collector::Collector& collector);
  ~LiveService();
  LiveService(const LiveService&) = delete;
  LiveService& operator=(const LiveService&) = delete;

  // Binds and starts accepting. Throws std::runtime_error on bind failure.
  void start();
  void stop();
  wire::Endpoint local_endpoint() const;

  // Routing without the socket; `target` may carry a query string.
  HttpResponse handle(const std::string& method, const std::string& target, const std::string& body);

  ServiceCounters counters() const;

 private:
  struct Impl;
  struct ActiveSession {
    wire::Ipv4Address ap;
  };

  HttpResponse post_session(const std::string& body);
  HttpResponse delete_session();
  HttpResponse get_session();
  HttpResponse reset_session(const std::string& body);
  controller::Controller& controller_for(const wire::Ipv4Address& ap);

  ServiceConfig config_;
  collector::Collector& collector_;

  std::mutex op_mu_;  // held for the whole of a session operation
  mutable std::mutex state_mu_;
  std::map<wire::Ipv4Address, std::unique_ptr<controller::Controller>> controllers_;
  std::optional<ActiveSession> active_;

  std::atomic<std::uint64_t> http_requests_{0};
  std::atomic<std::uint64_t> stream_clients_{0};
  std::atomic<std::uint64_t> stream_events_{0};

  std::unique_ptr<Impl> impl_;
};

}  // namespace zcsi::service
