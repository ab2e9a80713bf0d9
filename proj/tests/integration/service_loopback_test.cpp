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

#include <chrono>
#include <thread>

#include <gtest/gtest.h>

#include "http_client.hpp"
#include "loopback.hpp"
#include "zcsi/service/live_service.hpp"

namespace zcsi {
namespace {

using namespace std::chrono_literals;
using nlohmann::json;

struct ServiceStack {
  testing::Loopback lb;
  std::unique_ptr<service::LiveService> svc;

  explicit ServiceStack(double rate_hz) : lb(testing::loopback_emulator_config(rate_hz)) {
    service::ServiceConfig cfg;
    cfg.listen = {wire::Ipv4Address::loopback(), 0};
    cfg.controller.ap_address = wire::Ipv4Address::loopback();
    cfg.controller.command_port = lb.emulator->command_endpoint().port;
    svc = std::make_unique<service::LiveService>(cfg, *lb.collector);
    svc->start();
  }

  testing::HttpResult call(const std::string& method, const std::string& target, const std::string& body = {}) {
    return testing::http_call(svc->local_endpoint(), method, target, body);
  }
};

const std::string k5g = R"({"band":"5g","report_target_ip":"127.0.0.1"})";
const std::string k24g = R"({"band":"2.4g","report_target_ip":"127.0.0.1"})";

TEST(ServiceLoopback, SessionLifecycleOverHttp) {
  ServiceStack s(50.0);
  EXPECT_EQ(s.call("GET", "/api/health").status, 200u);
  auto latest = s.call("GET", "/api/frames/latest?n=5");
  EXPECT_EQ(latest.status, 200u);
  EXPECT_EQ(json::parse(latest.body), json::array());

  auto post = s.call("POST", "/api/v1/session", k5g);
  ASSERT_EQ(post.status, 200u) << post.body;
  EXPECT_EQ(json::parse(post.body)["phase"], "reporting");
  auto t1 = json::parse(s.call("GET", "/api/stats").body)["total_frames"].get<std::uint64_t>();
  std::this_thread::sleep_for(300ms);
  auto t2 = json::parse(s.call("GET", "/api/stats").body)["total_frames"].get<std::uint64_t>();
  EXPECT_GT(t2, t1);

  auto again = s.call("POST", "/api/session", k5g);
  EXPECT_EQ(again.status, 409u);
  EXPECT_EQ(json::parse(again.body)["error"], "session_active");

  EXPECT_EQ(s.call("DELETE", "/api/session").status, 200u);
  auto locked = s.call("POST", "/api/session", k24g);
  EXPECT_EQ(locked.status, 409u);
  EXPECT_EQ(json::parse(locked.body)["error"], "band_locked");
  EXPECT_NE(json::parse(locked.body)["message"].get<std::string>().find("reboot"), std::string::npos);

  s.lb.emulator->reboot();
  EXPECT_EQ(s.call("POST", "/api/session/reset").status, 200u);
  auto switched = s.call("POST", "/api/session", k24g);
  EXPECT_EQ(switched.status, 200u) << switched.body;
  EXPECT_EQ(json::parse(s.call("GET", "/api/session").body)["locked_band"], "2.4g");
}

TEST(ServiceLoopback, ConcurrentPostIsBusy) {
  ServiceStack s(50.0);
  testing::HttpResult first;
  std::thread t([&] { first = s.call("POST", "/api/session", k5g); });
  std::this_thread::sleep_for(200ms);
  auto second = s.call("POST", "/api/session", k5g);
  t.join();
  EXPECT_EQ(first.status, 200u);
  EXPECT_EQ(second.status, 409u);
  EXPECT_EQ(json::parse(second.body)["error"], "busy");
}

TEST(ServiceLoopback, StreamIsRateCapped) {
  ServiceStack s(100.0);
  ASSERT_EQ(s.call("POST", "/api/session", k5g).status, 200u);
  testing::WsClient ws(s.svc->local_endpoint(), "/ws/csi");
  auto first = json::parse(ws.read());
  EXPECT_EQ(first["peer_addr"], testing::station(1).mac.to_string());
  EXPECT_FALSE(first.contains("i"));

  auto start = std::chrono::steady_clock::now();
  int n = 0;
  while (std::chrono::steady_clock::now() - start < 2s) {
    ws.read();
    ++n;
  }
  EXPECT_LE(n, 62);
  EXPECT_GE(n, 40);
  ws.close();
}

TEST(ServiceLoopback, SlowConsumerDoesNotStallCollector) {
  ServiceStack s(100.0);
  ASSERT_EQ(s.call("POST", "/api/session", k5g).status, 200u);
  testing::WsClient ws(s.svc->local_endpoint(), "/api/v1/ws/csi?iq=1");
  auto first = json::parse(ws.read());
  EXPECT_TRUE(first.contains("i"));
  auto before = s.lb.collector->counters();
  std::this_thread::sleep_for(1s);  // not reading
  auto after = s.lb.collector->counters();
  EXPECT_GE(after.frames_accepted - before.frames_accepted, 90u);
  EXPECT_GT(after.subscriber_drops, before.subscriber_drops);
  EXPECT_EQ(after.decode_errors, 0u);
  ws.close();
}

TEST(ServiceLoopback, StopWithOpenStream) {
  ServiceStack s(50.0);
  ASSERT_EQ(s.call("POST", "/api/session", k5g).status, 200u);
  testing::WsClient ws(s.svc->local_endpoint(), "/ws/csi");
  ws.read();
  auto t0 = std::chrono::steady_clock::now();
  s.svc->stop();
  EXPECT_LT(std::chrono::steady_clock::now() - t0, 1s);
}

}  // namespace
}  // namespace zcsi
