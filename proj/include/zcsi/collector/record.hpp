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

#include <cstdint>
#include <vector>

#include "zcsi/wire/addresses.hpp"
#include "zcsi/wire/csi_frame.hpp"

namespace zcsi::collector {

// One accepted CSI report together with where and when it arrived.
struct CsiRecord {
  std::uint64_t received_at_us = 0;  // wall clock, microseconds since epoch
  wire::Endpoint source;
  wire::CsiDataFrame frame;
  std::vector<std::uint8_t> raw;  // exact datagram payload; decodes to `frame`

  bool operator==(const CsiRecord&) const = default;
};

}  // namespace zcsi::collector
