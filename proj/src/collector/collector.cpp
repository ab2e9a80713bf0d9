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

#include "zcsi/collector/collector.hpp"

#include <algorithm>
#include <chrono>

#include "zcsi/wire/error.hpp"

namespace zcsi::collector {

std::uint64_t wall_clock_us() {
  return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::microseconds>(
                                        std::chrono::system_clock::now().time_since_epoch())
                                        .count());
}

Collector::Collector(CollectorConfig config)
    : config_(std::move(config)), socket_(net::UdpSocket::bind(config_.bind)) {
  if (config_.window_capacity == 0) config_.window_capacity = 1;
  if (config_.capture_path) {
    try {
      capture_ = std::make_unique<CaptureWriter>(*config_.capture_path);
    } catch (const CaptureError& e) {
      capture_warning_ = e.what();
      ++counters_.capture_write_errors;
    }
  }
}

Collector::~Collector() { stop(); }

void Collector::start() {
  if (receiver_.joinable()) return;
  receiver_ = std::jthread([this](std::stop_token st) { receive_loop(st); });
}

void Collector::stop() {
  if (!receiver_.joinable()) return;
  receiver_.request_stop();
  receiver_.join();
  receiver_ = std::jthread();
}

void Collector::receive_loop(std::stop_token stop) {
  using namespace std::chrono_literals;
  while (!stop.stop_requested()) {
    std::optional<net::Datagram> dg;
    try {
      dg = socket_.receive(50ms);
    } catch (const net::TransportError&) {
      std::this_thread::sleep_for(10ms);
      continue;
    }
    if (!dg) continue;
    const auto at = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::microseconds>(dg->received_at.time_since_epoch())
            .count());
    if (dg->truncated) {
      std::lock_guard lock(mu_);
      ++counters_.datagrams;
      ++counters_.decode_errors;
      stats_.record_decode_error();
      continue;
    }
    ingest(dg->payload, dg->source, at);
  }
}

IngestOutcome Collector::ingest(std::span<const std::uint8_t> raw, const wire::Endpoint& source,
                                std::uint64_t received_at_us) {
  auto record = std::make_shared<CsiRecord>();
  bool decoded = true;
  try {
    record->frame = wire::decode_csi_frame(raw);
  } catch (const wire::WireError&) {
    decoded = false;
  }

  {
    std::lock_guard lock(mu_);
    ++counters_.datagrams;
    if (!decoded) {
      ++counters_.decode_errors;
      stats_.record_decode_error();
      return IngestOutcome::kDecodeError;
    }
    if (config_.strict_source_port && source.port != config_.expected_source_port) {
      ++counters_.source_port_rejected;
      return IngestOutcome::kWrongSourcePort;
    }
    if (config_.mac_allowlist && !config_.mac_allowlist->contains(record->frame.peer_addr)) {
      ++counters_.filtered_out;
      return IngestOutcome::kFilteredOut;
    }
  }

  record->received_at_us = received_at_us;
  record->source = source;
  record->raw.assign(raw.begin(), raw.end());
  const bool anomalous = wire::inspect_frame(record->frame).any();
  RecordPtr shared = std::move(record);

  {
    std::lock_guard lock(mu_);
    ++counters_.frames_accepted;
    if (anomalous) ++counters_.anomalous_frames;
    stats_.accumulate(*shared);
    window_.push_back(shared);
    while (window_.size() > config_.window_capacity) window_.pop_front();
  }

  {
    std::lock_guard lock(capture_mu_);
    if (capture_) {
      try {
        capture_->append(*shared);
      } catch (const CaptureError& e) {
        capture_.reset();
        std::lock_guard state_lock(mu_);
        ++counters_.capture_write_errors;
        capture_warning_ = std::string("capture disabled, continuing in memory: ") + e.what();
      }
    }
  }

  deliver(shared);
  return IngestOutcome::kAccepted;
}

void Collector::deliver(const RecordPtr& record) {
  std::lock_guard lock(subs_mu_);
  for (const auto& sub : subscribers_) sub->push(record);
}

std::vector<RecordPtr> Collector::window() const {
  std::lock_guard lock(mu_);
  return {window_.begin(), window_.end()};
}

std::vector<RecordPtr> Collector::latest(std::size_t n) const {
  std::lock_guard lock(mu_);
  n = std::min(n, window_.size());
  return {window_.end() - static_cast<std::ptrdiff_t>(n), window_.end()};
}

analysis::StatsSnapshot Collector::stats() const {
  std::lock_guard lock(mu_);
  return stats_.snapshot(wall_clock_us());
}

CollectorCounters Collector::counters() const {
  CollectorCounters c;
  {
    std::lock_guard lock(mu_);
    c = counters_;
  }
  std::lock_guard lock(subs_mu_);
  c.subscriber_drops = retired_drops_;
  for (const auto& sub : subscribers_) c.subscriber_drops += sub->dropped();
  return c;
}

std::optional<std::string> Collector::capture_warning() const {
  std::lock_guard lock(mu_);
  return capture_warning_;
}

std::shared_ptr<Subscription> Collector::subscribe(std::optional<std::size_t> capacity) {
  auto sub = std::make_shared<Subscription>(capacity.value_or(config_.subscriber_queue_capacity));
  std::lock_guard lock(subs_mu_);
  subscribers_.push_back(sub);
  return sub;
}

void Collector::unsubscribe(const std::shared_ptr<Subscription>& subscription) {
  std::lock_guard lock(subs_mu_);
  auto it = std::find(subscribers_.begin(), subscribers_.end(), subscription);
  if (it != subscribers_.end()) {
    retired_drops_ += (*it)->dropped();
    (*it)->close();
    subscribers_.erase(it);
  }
}

}  // namespace zcsi::collector
