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
#include <cstddef>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>

#include "zcsi/collector/record.hpp"

namespace zcsi::collector {

using RecordPtr = std::shared_ptr<const CsiRecord>;

// Bounded hand-off from the receive loop to one consumer. A full queue
// drops its oldest entry so the producer never waits.
class Subscription {
 public:
  explicit Subscription(std::size_t capacity) : capacity_(capacity == 0 ? 1 : capacity) {}

  void push(RecordPtr record) {
    {
      std::lock_guard lock(mu_);
      if (closed_) return;
      if (queue_.size() >= capacity_) {
        queue_.pop_front();
        ++dropped_;
      }
      queue_.push_back(std::move(record));
    }
    cv_.notify_one();
  }

  // Waits up to `timeout`; nullopt on timeout or once closed and drained.
  std::optional<RecordPtr> pop(std::chrono::milliseconds timeout) {
    std::unique_lock lock(mu_);
    cv_.wait_for(lock, timeout, [&] { return !queue_.empty() || closed_; });
    if (queue_.empty()) return std::nullopt;
    auto r = std::move(queue_.front());
    queue_.pop_front();
    return r;
  }

  void close() {
    {
      std::lock_guard lock(mu_);
      closed_ = true;
    }
    cv_.notify_all();
  }

  bool closed() const {
    std::lock_guard lock(mu_);
    return closed_;
  }
  std::uint64_t dropped() const {
    std::lock_guard lock(mu_);
    return dropped_;
  }
  std::size_t pending() const {
    std::lock_guard lock(mu_);
    return queue_.size();
  }

 private:
  const std::size_t capacity_;
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::deque<RecordPtr> queue_;
  std::uint64_t dropped_ = 0;
  bool closed_ = false;
};

}  // namespace zcsi::collector
