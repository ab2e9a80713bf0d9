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

#include "zcsi/service/frame_event.hpp"

#include <cmath>

#include "zcsi/analysis/spectrum.hpp"

namespace zcsi::service {

namespace {

// Plot values do not need full double precision and it keeps events small.
double round_to(double v, double step) { return std::round(v / step) * step; }

}  // namespace

FrameEvent make_frame_event(const collector::CsiRecord& record, bool include_iq) {
  const auto& f = record.frame;
  FrameEvent e;
  e.received_at_us = record.received_at_us;
  e.peer_addr = f.peer_addr.to_string();
  e.bw_code = f.bw;
  if (auto bw = f.bandwidth()) e.bw_mhz = bw->mhz();
  e.mcs = f.mcs;
  e.rssi = f.rssi;
  e.csi_cnt = f.csi_cnt;

  auto view = analysis::to_spectrum(f);
  auto idx = analysis::decimation_indices(view.subcarrier_count, kMaxPlotPoints);
  e.stride = idx.size() > 1 ? idx[1] - idx[0] : 1;
  for (auto k : idx) {
    e.magnitude.push_back(round_to(view.magnitude[k], 1e-2));
    e.phase.push_back(round_to(view.phase_rad[k], 1e-4));
  }
  if (include_iq) {
    auto n = static_cast<std::size_t>(f.csi_cnt);
    e.i.emplace(f.csi_i.begin(), f.csi_i.begin() + n);
    e.q.emplace(f.csi_q.begin(), f.csi_q.begin() + n);
  }
  return e;
}

nlohmann::json to_json(const FrameEvent& e) {
  nlohmann::json j{
      {"received_at_us", e.received_at_us},
      {"peer_addr", e.peer_addr},
      {"bw_code", e.bw_code},
      {"bw_mhz", e.bw_mhz},
      {"mcs", e.mcs},
      {"rssi", e.rssi},
      {"csi_cnt", e.csi_cnt},
      {"stride", e.stride},
      {"magnitude", e.magnitude},
      {"phase", e.phase},
  };
  if (e.i) j["i"] = *e.i;
  if (e.q) j["q"] = *e.q;
  return j;
}

}  // namespace zcsi::service
