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

#include "zcsi/wire/csi_frame.hpp"

#include <algorithm>
#include <string>

#include "zcsi/wire/byte_order.hpp"
#include "zcsi/wire/error.hpp"

namespace zcsi::wire {

std::optional<Bandwidth> Bandwidth::from_code(std::uint32_t code) noexcept {
  if (code > 4) return std::nullopt;
  return Bandwidth(static_cast<std::uint8_t>(code));
}

int Bandwidth::mhz() const noexcept {
  static constexpr int kMhz[] = {20, 40, 80, 160, 160};
  return kMhz[code_];
}

int Bandwidth::max_subcarriers() const noexcept {
  static constexpr int kTones[] = {64, 128, 256, 512, 512};
  return kTones[code_];
}

namespace {

void validate(const CsiDataFrame& f) {
  if ((f.magic >> 16) != kCsiMagicHigh) {
    throw WireError(WireErrc::kBadMagic, "CSI magic high half is not 0xCAFE");
  }
  if (f.bw > 4) {
    throw WireError(WireErrc::kInvalidField, "bandwidth code " + std::to_string(f.bw));
  }
  if (f.csi_cnt <= 0 || f.csi_cnt > static_cast<int>(kMaxSubcarriers)) {
    throw WireError(WireErrc::kCsiCountOutOfRange, "csi_cnt " + std::to_string(f.csi_cnt));
  }
}

}  // namespace

CsiDataFrame decode_csi_frame(std::span<const std::uint8_t> data) {
  if (data.size() != kCsiFrameSize) {
    throw WireError(WireErrc::kBadLength, "CSI frame is " + std::to_string(data.size()) +
                                              " bytes, expected " +
                                              std::to_string(kCsiFrameSize));
  }
  LeReader in(data, WireErrc::kBadLength);
  CsiDataFrame f;
  f.magic = in.get<std::uint32_t>();
  f.vendor = in.get<std::uint8_t>();
  f.chip_id = in.get<std::uint32_t>();
  f.timestamp_us = in.get<std::uint64_t>();
  f.resv = in.get<std::uint32_t>();
  f.bw = in.get<std::uint32_t>();
  f.phy_mode = in.get<std::uint32_t>();
  f.resv_1 = in.get<std::uint8_t>();
  f.resv_2 = in.get<std::uint16_t>();
  in.get_all(f.peer_addr.octets);
  in.get_all(f.rssi);
  in.get_all(f.resv_3);
  in.get_all(f.agc_gain);
  f.mcs = in.get<std::int16_t>();
  f.gi_type = in.get<std::int8_t>();
  f.coding = in.get<std::int8_t>();
  f.stbc = in.get<std::int8_t>();
  f.resv_4 = in.get<std::int8_t>();
  f.dcm = in.get<std::int8_t>();
  f.resv_5 = in.get<std::int8_t>();
  f.resv_6 = in.get<std::uint64_t>();
  f.csi_cnt = in.get<std::int16_t>();
  in.get_all(f.csi_i);
  in.get_all(f.csi_q);
  validate(f);
  return f;
}

std::vector<std::uint8_t> encode_csi_frame(const CsiDataFrame& f) {
  validate(f);
  LeWriter out(kCsiFrameSize);
  out.put(f.magic);
  out.put(f.vendor);
  out.put(f.chip_id);
  out.put(f.timestamp_us);
  out.put(f.resv);
  out.put(f.bw);
  out.put(f.phy_mode);
  out.put(f.resv_1);
  out.put(f.resv_2);
  out.put_all(f.peer_addr.octets);
  out.put_all(f.rssi);
  out.put_all(f.resv_3);
  out.put_all(f.agc_gain);
  out.put(f.mcs);
  out.put(f.gi_type);
  out.put(f.coding);
  out.put(f.stbc);
  out.put(f.resv_4);
  out.put(f.dcm);
  out.put(f.resv_5);
  out.put(f.resv_6);
  out.put(f.csi_cnt);
  out.put_all(f.csi_i);
  out.put_all(f.csi_q);
  return std::move(out).take();
}

FrameAnomalies inspect_frame(const CsiDataFrame& f) noexcept {
  FrameAnomalies a;
  auto bw = f.bandwidth();
  if (bw && f.csi_cnt > bw->max_subcarriers()) a.count_exceeds_bandwidth = true;
  if (f.csi_cnt > 0 && f.csi_cnt <= static_cast<int>(kMaxSubcarriers)) {
    auto nonzero = [](std::int32_t v) { return v != 0; };
    a.nonzero_tail = std::any_of(f.csi_i.begin() + f.csi_cnt, f.csi_i.end(), nonzero) ||
                     std::any_of(f.csi_q.begin() + f.csi_cnt, f.csi_q.end(), nonzero);
  }
  return a;
}

std::size_t active_chain_count(const CsiDataFrame& f) noexcept {
  return static_cast<std::size_t>(
      std::count_if(f.rssi.begin(), f.rssi.end(), [](std::int32_t v) { return v != 0; }));
}

}  // namespace zcsi::wire
