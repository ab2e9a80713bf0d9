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

#include "zcsi/net/udp_socket.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <utility>

namespace zcsi::net {
namespace {

sockaddr_in to_sockaddr(const wire::Endpoint& ep) {
  sockaddr_in sa{};
  sa.sin_family = AF_INET;
  sa.sin_port = htons(ep.port);
  sa.sin_addr.s_addr = htonl(ep.address.to_host_u32());
  return sa;
}

wire::Endpoint from_sockaddr(const sockaddr_in& sa) {
  return wire::Endpoint{wire::Ipv4Address::from_host_u32(ntohl(sa.sin_addr.s_addr)),
                        ntohs(sa.sin_port)};
}

[[noreturn]] void fail(const std::string& what) {
  int e = errno;
  throw TransportError(what + ": " + std::strerror(e), e);
}

}  // namespace

UdpSocket UdpSocket::bind(const wire::Endpoint& local) {
  int fd = ::socket(AF_INET, SOCK_DGRAM | SOCK_CLOEXEC, 0);
  if (fd < 0) fail("socket");
  UdpSocket sock(fd);
  // Room for bursts of 4296-byte reports.
  int rcvbuf = 4 << 20;
  ::setsockopt(fd, SOL_SOCKET, SO_RCVBUF, &rcvbuf, sizeof(rcvbuf));
  auto sa = to_sockaddr(local);
  if (::bind(fd, reinterpret_cast<const sockaddr*>(&sa), sizeof(sa)) != 0) {
    fail("bind " + local.to_string());
  }
  return sock;
}

UdpSocket::UdpSocket(UdpSocket&& other) noexcept
    : fd_(std::exchange(other.fd_, -1)), timestamps_(other.timestamps_) {}

UdpSocket& UdpSocket::operator=(UdpSocket&& other) noexcept {
  if (this != &other) {
    close();
    fd_ = std::exchange(other.fd_, -1);
    timestamps_ = other.timestamps_;
  }
  return *this;
}

UdpSocket::~UdpSocket() { close(); }

void UdpSocket::close() noexcept {
  if (fd_ >= 0) ::close(fd_);
  fd_ = -1;
}

wire::Endpoint UdpSocket::local_endpoint() const {
  sockaddr_in sa{};
  socklen_t len = sizeof(sa);
  if (::getsockname(fd_, reinterpret_cast<sockaddr*>(&sa), &len) != 0) fail("getsockname");
  return from_sockaddr(sa);
}

void UdpSocket::enable_kernel_timestamps() {
  int one = 1;
  if (::setsockopt(fd_, SOL_SOCKET, SO_TIMESTAMPNS, &one, sizeof(one)) != 0) {
    fail("SO_TIMESTAMPNS");
  }
  timestamps_ = true;
}

void UdpSocket::send_to(std::span<const std::uint8_t> payload, const wire::Endpoint& to) {
  auto sa = to_sockaddr(to);
  for (;;) {
    auto n = ::sendto(fd_, payload.data(), payload.size(), 0, reinterpret_cast<const sockaddr*>(&sa),
                      sizeof(sa));
    if (n >= 0) return;
    if (errno == EINTR) continue;
    fail("sendto " + to.to_string());
  }
}

std::optional<Datagram> UdpSocket::receive(std::chrono::milliseconds timeout, std::size_t max_size) {
  pollfd pfd{fd_, POLLIN, 0};
  int ready = ::poll(&pfd, 1, static_cast<int>(timeout.count()));
  if (ready < 0) {
    if (errno == EINTR) return std::nullopt;
    fail("poll");
  }
  if (ready == 0) return std::nullopt;

  Datagram dg;
  dg.payload.resize(max_size);
  sockaddr_in from{};
  iovec iov{dg.payload.data(), dg.payload.size()};
  alignas(cmsghdr) char control[CMSG_SPACE(sizeof(timespec))];
  msghdr msg{};
  msg.msg_name = &from;
  msg.msg_namelen = sizeof(from);
  msg.msg_iov = &iov;
  msg.msg_iovlen = 1;
  msg.msg_control = control;
  msg.msg_controllen = sizeof(control);

  auto n = ::recvmsg(fd_, &msg, MSG_TRUNC | MSG_DONTWAIT);
  if (n < 0) {
    if (errno == EINTR || errno == EAGAIN || errno == ECONNREFUSED) return std::nullopt;
    fail("recvmsg");
  }
  dg.received_at = std::chrono::system_clock::now();
  dg.truncated = (msg.msg_flags & MSG_TRUNC) != 0;
  dg.payload.resize(std::min(static_cast<std::size_t>(n), max_size));
  dg.source = from_sockaddr(from);
  if (timestamps_) {
    for (cmsghdr* c = CMSG_FIRSTHDR(&msg); c != nullptr; c = CMSG_NXTHDR(&msg, c)) {
      if (c->cmsg_level == SOL_SOCKET && c->cmsg_type == SCM_TIMESTAMPNS) {
        timespec ts;
        std::memcpy(&ts, CMSG_DATA(c), sizeof(ts));
        dg.received_at = std::chrono::system_clock::time_point(
            std::chrono::duration_cast<std::chrono::system_clock::duration>(
                std::chrono::seconds(ts.tv_sec) + std::chrono::nanoseconds(ts.tv_nsec)));
      }
    }
  }
  return dg;
}

}  // namespace zcsi::net
