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
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "zcsi/wire/addresses.hpp"

namespace zcsi::net {

class TransportError : public std::runtime_error {
 public:
  TransportError(const std::string& what, int sys_errno)
      : std::runtime_error(what), sys_errno_(sys_errno) {}
  int sys_errno() const noexcept { return sys_errno_; }

 private:
  int sys_errno_;
};

inline constexpr std::size_t kMaxDatagramSize = 8192;

struct Datagram {
  std::vector<std::uint8_t> payload;
  wire::Endpoint source;
  // Kernel receive time when timestamps are enabled, else the time the
  // datagram was read.
  std::chrono::system_clock::time_point received_at;
  // The datagram was larger than the read buffer and got cut.
  bool truncated = false;
};

// Owning IPv4 UDP socket.
class UdpSocket {
 public:
  // Binds to `local`; port 0 picks an ephemeral port. Throws TransportError.
  static UdpSocket bind(const wire::Endpoint& local);
  static UdpSocket ephemeral() { return bind(wire::Endpoint{wire::Ipv4Address::any(), 0}); }

  UdpSocket(UdpSocket&& other) noexcept;
  UdpSocket& operator=(UdpSocket&& other) noexcept;
  UdpSocket(const UdpSocket&) = delete;
  UdpSocket& operator=(const UdpSocket&) = delete;
  ~UdpSocket();

  wire::Endpoint local_endpoint() const;

  // Stamp incoming datagrams with kernel receive time (SO_TIMESTAMPNS).
  void enable_kernel_timestamps();

  void send_to(std::span<const std::uint8_t> payload, const wire::Endpoint& to);

  // Waits up to `timeout`; nullopt on timeout. Errors other than
  // EINTR/ECONNREFUSED raise TransportError.
  std::optional<Datagram> receive(std::chrono::milliseconds timeout,
                                  std::size_t max_size = kMaxDatagramSize);

 private:
  explicit UdpSocket(int fd) : fd_(fd) {}
  void close() noexcept;

  int fd_ = -1;
  bool timestamps_ = false;
};

}  // namespace zcsi::net
