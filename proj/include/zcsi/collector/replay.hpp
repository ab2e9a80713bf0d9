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
#include <filesystem>
#include <optional>

#include "zcsi/wire/addresses.hpp"

namespace zcsi::collector {

struct ReplayOptions {
  wire::Endpoint target;
  // Recorded inter-arrival gaps are divided by this factor; must be > 0.
  double rate = 1.0;
  // Local address to send from; ephemeral when unset.
  std::optional<wire::Endpoint> source;
};

struct ReplayResult {
  std::size_t datagrams_sent = 0;
};

// Re-sends every raw datagram of a capture file in order. Throws
// CaptureError for unreadable captures, net::TransportError on send failure
// and std::invalid_argument for a non-positive rate.
ReplayResult replay_capture(const std::filesystem::path& path, const ReplayOptions& options);

}  // namespace zcsi::collector
