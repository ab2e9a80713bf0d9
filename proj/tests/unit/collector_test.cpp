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
#include <filesystem>
#include <random>
#include <thread>
#include <vector>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "temp_dir.hpp"
#include "zcsi/collector/collector.hpp"
#include "zcsi/collector/replay.hpp"
#include "zcsi/wire/csi_frame.hpp"

namespace zcsi::collector {
namespace {

using namespace std::chrono_literals;
using Bytes = std::vector<std::uint8_t>;

CollectorConfig loopback_config() {
  CollectorConfig cfg;
  cfg.bind = {wire::Ipv4Address::loopback(), 0};
  return cfg;
}

Bytes frame_bytes(const wire::MacAddress& mac, int mcs = 9, std::uint32_t bw = 3) {
  wire::CsiDataFrame f;
  f.peer_addr = mac;
  f.mcs = static_cast<std::int16_t>(mcs);
  f.bw = bw;
  f.csi_cnt = 512;
  f.rssi[0] = -40;
  return wire::encode_csi_frame(f);
}

const wire::MacAddress kStaA = *wire::MacAddress::parse("0a:19:c6:51:00:12");
const wire::MacAddress kStaB = *wire::MacAddress::parse("02:00:00:00:00:0b");
const wire::Endpoint kAp{*wire::Ipv4Address::parse("192.168.5.1"), 8024};

template <typename Pred>
bool wait_until(Pred pred, std::chrono::milliseconds limit = 3s) {
  auto deadline = std::chrono::steady_clock::now() + limit;
  while (std::chrono::steady_clock::now() < deadline) {
    if (pred()) return true;
    std::this_thread::sleep_for(5ms);
  }
  return pred();
}

TEST(Collector, GarbageDatagramCountsAsDecodeError) {
  Collector c(loopback_config());
  Bytes garbage(10, 0x5A);
  EXPECT_EQ(c.ingest(garbage, kAp, 1), IngestOutcome::kDecodeError);
  EXPECT_TRUE(c.window().empty());
  EXPECT_EQ(c.counters().decode_errors, 1u);
  EXPECT_EQ(c.stats().decode_errors, 1u);
  EXPECT_EQ(c.stats().total_frames, 0u);
}

TEST(Collector, AllowlistAdmitsOnlyListedStations) {
  auto cfg = loopback_config();
  cfg.mac_allowlist = std::set<wire::MacAddress>{kStaA};
  Collector c(cfg);
  for (int k = 0; k < 50; ++k) {
    c.ingest(frame_bytes(kStaA), kAp, k);
    c.ingest(frame_bytes(kStaB), kAp, k);
  }
  auto records = c.window();
  ASSERT_EQ(records.size(), 50u);
  for (const auto& r : records) EXPECT_EQ(r->frame.peer_addr, kStaA);
  EXPECT_EQ(c.counters().filtered_out, 50u);
}

TEST(Collector, WindowEvictsOldestFirst) {
  auto cfg = loopback_config();
  cfg.window_capacity = 8;
  Collector c(cfg);
  for (int k = 0; k < 20; ++k) {
    c.ingest(frame_bytes(kStaA, k), kAp, static_cast<std::uint64_t>(k));
    ASSERT_LE(c.window().size(), 8u);
  }
  auto w = c.window();
  ASSERT_EQ(w.size(), 8u);
  for (std::size_t k = 0; k < 8; ++k) EXPECT_EQ(w[k]->frame.mcs, static_cast<int>(12 + k));
  auto last3 = c.latest(3);
  ASSERT_EQ(last3.size(), 3u);
  EXPECT_EQ(last3.back()->frame.mcs, 19);
  EXPECT_EQ(c.latest(100).size(), 8u);
  // Stats cover everything seen, not only the window.
  EXPECT_EQ(c.stats().total_frames, 20u);
}

TEST(Collector, RetainedRecordsDecodeToTheirFrame) {
  Collector c(loopback_config());
  std::mt19937_64 rng(8);
  for (int k = 0; k < 50; ++k) c.ingest(wire::encode_csi_frame(testing::random_csi_frame(rng)), kAp, k);
  for (const auto& r : c.window()) EXPECT_EQ(wire::decode_csi_frame(r->raw), r->frame);
}

TEST(Collector, StrictSourcePort) {
  auto cfg = loopback_config();
  cfg.strict_source_port = true;
  Collector c(cfg);
  EXPECT_EQ(c.ingest(frame_bytes(kStaA), {kAp.address, 9999}, 1), IngestOutcome::kWrongSourcePort);
  EXPECT_EQ(c.ingest(frame_bytes(kStaA), kAp, 2), IngestOutcome::kAccepted);
  Collector lenient(loopback_config());
  EXPECT_EQ(lenient.ingest(frame_bytes(kStaA), {kAp.address, 9999}, 1), IngestOutcome::kAccepted);
}

TEST(Collector, AnomalousFramesAreKeptAndCounted) {
  Collector c(loopback_config());
  wire::CsiDataFrame f;
  f.bw = 0;
  f.csi_cnt = 200;
  EXPECT_EQ(c.ingest(wire::encode_csi_frame(f), kAp, 1), IngestOutcome::kAccepted);
  EXPECT_EQ(c.counters().anomalous_frames, 1u);
}

TEST(Collector, SlowSubscriberDropsOldestWithoutBlocking) {
  Collector c(loopback_config());
  auto slow = c.subscribe(4);
  auto fast = c.subscribe(1000);
  for (int k = 0; k < 100; ++k) c.ingest(frame_bytes(kStaA, k % 12), kAp, k);
  EXPECT_EQ(c.counters().frames_accepted, 100u);
  EXPECT_EQ(slow->dropped(), 96u);
  EXPECT_EQ(slow->pending(), 4u);
  auto first = slow->pop(0ms);
  ASSERT_TRUE(first);
  EXPECT_EQ((*first)->received_at_us, 96u);
  EXPECT_EQ(fast->pending(), 100u);
  EXPECT_EQ(c.counters().subscriber_drops, 96u);
  c.unsubscribe(slow);
  EXPECT_TRUE(slow->closed());
  EXPECT_EQ(c.counters().subscriber_drops, 96u);
}

TEST(Collector, CaptureFileReceivesAcceptedFrames) {
  testing::TempDir dir;
  auto cfg = loopback_config();
  cfg.capture_path = dir / "cap.bin";
  {
    Collector c(cfg);
    for (int k = 0; k < 10; ++k) c.ingest(frame_bytes(kStaA, k), kAp, 1000 + k);
    c.ingest(Bytes(5, 0), kAp, 5000);
  }
  auto records = read_capture(dir / "cap.bin");
  ASSERT_EQ(records.size(), 10u);
  EXPECT_EQ(records[3].frame.mcs, 3);
  EXPECT_EQ(records[3].received_at_us, 1003u);
  EXPECT_EQ(records[3].source, kAp);
}

TEST(Collector, DiskFailureKeepsCollectingInMemory) {
  if (!std::filesystem::exists("/dev/full")) GTEST_SKIP();
  auto cfg = loopback_config();
  cfg.capture_path = "/dev/full";
  Collector c(cfg);
  for (int k = 0; k < 5; ++k) c.ingest(frame_bytes(kStaA), kAp, k);
  EXPECT_EQ(c.window().size(), 5u);
  EXPECT_TRUE(c.capture_warning());
  EXPECT_GE(c.counters().capture_write_errors, 1u);
}

TEST(Collector, ReceivesOverLoopback) {
  Collector c(loopback_config());
  c.start();
  auto sender = net::UdpSocket::ephemeral();
  auto target = c.local_endpoint();
  for (int k = 0; k < 100; ++k) {
    sender.send_to(frame_bytes(kStaA, k % 10), target);
    if (k % 20 == 19) std::this_thread::sleep_for(2ms);
  }
  sender.send_to(Bytes(10, 0xEE), target);
  ASSERT_TRUE(wait_until([&] { return c.counters().datagrams >= 101; }));
  EXPECT_EQ(c.counters().frames_accepted, 100u);
  EXPECT_EQ(c.counters().decode_errors, 1u);
  auto w = c.window();
  ASSERT_EQ(w.size(), 100u);
  EXPECT_EQ(w.front()->source.address, wire::Ipv4Address::loopback());
  EXPECT_EQ(w.front()->source.port, sender.local_endpoint().port);
  EXPECT_GT(w.front()->received_at_us, 0u);
  c.stop();
  EXPECT_FALSE(c.running());
}

TEST(Collector, OversizedDatagramIsRejected) {
  Collector c(loopback_config());
  c.start();
  auto sender = net::UdpSocket::ephemeral();
  sender.send_to(Bytes(9000, 1), c.local_endpoint());
  ASSERT_TRUE(wait_until([&] { return c.counters().datagrams >= 1; }));
  EXPECT_EQ(c.counters().decode_errors, 1u);
}

TEST(Collector, BindFailureThrows) {
  Collector first(loopback_config());
  auto cfg = loopback_config();
  cfg.bind = first.local_endpoint();
  EXPECT_THROW(Collector second(cfg), net::TransportError);
}

std::vector<CsiRecord> spaced_records(std::size_t n, std::uint64_t gap_us) {
  std::vector<CsiRecord> out;
  for (std::size_t k = 0; k < n; ++k) {
    CsiRecord r;
    r.raw = frame_bytes(kStaA, static_cast<int>(k % 4), static_cast<std::uint32_t>(k % 3));
    r.frame = wire::decode_csi_frame(r.raw);
    r.received_at_us = 1'000'000 + k * gap_us;
    r.source = kAp;
    out.push_back(std::move(r));
  }
  return out;
}

TEST(Replay, EmptyCaptureReturnsImmediately) {
  testing::TempDir dir;
  write_capture(dir / "e.bin", {});
  auto t0 = std::chrono::steady_clock::now();
  auto res = replay_capture(dir / "e.bin", {{wire::Ipv4Address::loopback(), 9}, 1.0, {}});
  EXPECT_EQ(res.datagrams_sent, 0u);
  EXPECT_LT(std::chrono::steady_clock::now() - t0, 100ms);
}

TEST(Replay, RejectsNonPositiveRate) {
  testing::TempDir dir;
  write_capture(dir / "e.bin", {});
  EXPECT_THROW(replay_capture(dir / "e.bin", {{wire::Ipv4Address::loopback(), 9}, 0.0, {}}),
               std::invalid_argument);
}

TEST(Replay, RateScalesTiming) {
  testing::TempDir dir;
  auto records = spaced_records(21, 50'000);  // 1 s span
  write_capture(dir / "r.bin", records);
  Collector c(loopback_config());
  c.start();
  auto t0 = std::chrono::steady_clock::now();
  auto res = replay_capture(dir / "r.bin", {c.local_endpoint(), 10.0, {}});
  auto elapsed = std::chrono::steady_clock::now() - t0;
  EXPECT_EQ(res.datagrams_sent, 21u);
  EXPECT_LE(elapsed, 1000ms / 8);
  ASSERT_TRUE(wait_until([&] { return c.counters().frames_accepted == 21; }));
  auto s = c.stats();
  EXPECT_EQ(s.frames_by_mcs.at(0), 6u);
  EXPECT_EQ(s.frames_by_bandwidth.at(0), 7u);
}

}  // namespace
}  // namespace zcsi::collector
