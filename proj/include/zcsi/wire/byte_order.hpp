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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "zcsi/wire/error.hpp"

namespace zcsi::wire {

// Appends integers in little-endian order, independent of host byte order.
class LeWriter {
 public:
  explicit LeWriter(std::size_t reserve = 0) { buf_.reserve(reserve); }

  template <typename T>
    requires std::is_integral_v<T>
  void put(T value) {
    using U = std::make_unsigned_t<T>;
    auto u = static_cast<U>(value);
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      buf_.push_back(static_cast<std::uint8_t>(u & 0xFFu));
      if constexpr (sizeof(T) > 1) u = static_cast<U>(u >> 8);
    }
  }

  template <typename T, std::size_t N>
  void put_all(const std::array<T, N>& values) {
    for (const T& v : values) put(v);
  }

  std::size_t size() const noexcept { return buf_.size(); }
  std::vector<std::uint8_t> take() && { return std::move(buf_); }

 private:
  std::vector<std::uint8_t> buf_;
};

// Bounds-checked little-endian cursor. Reading past the end raises
// `short_error` rather than touching memory outside the span.
class LeReader {
 public:
  LeReader(std::span<const std::uint8_t> data, WireErrc short_error)
      : data_(data), short_error_(short_error) {}

  template <typename T>
    requires std::is_integral_v<T>
  T get() {
    require(sizeof(T));
    using U = std::make_unsigned_t<T>;
    U u = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      u = static_cast<U>(u | (static_cast<U>(data_[pos_ + i]) << (8 * i)));
    }
    pos_ += sizeof(T);
    return static_cast<T>(u);
  }

  template <typename T, std::size_t N>
  void get_all(std::array<T, N>& out) {
    require(sizeof(T) * N);
    for (T& v : out) v = get<T>();
  }

  std::size_t position() const noexcept { return pos_; }
  std::size_t remaining() const noexcept { return data_.size() - pos_; }

 private:
  void require(std::size_t n) const {
    if (remaining() < n) {
      throw WireError(short_error_, "need " + std::to_string(n) + " bytes at offset " +
                                        std::to_string(pos_) + ", have " +
                                        std::to_string(remaining()));
    }
  }

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
  WireErrc short_error_;
};

}  // namespace zcsi::wire
