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

#include "zcsi/analysis/export.hpp"

#include <cstdio>
#include <sstream>

namespace zcsi::analysis {

void write_spectrum_csv_rows(std::ostream& out, const SpectrumView& view,
                             const std::string& row_prefix) {
  char line[160];
  for (std::size_t k = 0; k < view.subcarrier_count; ++k) {
    std::snprintf(line, sizeof(line), "%zu,%.0f,%.0f,%.9g,%.9g\n", k, view.values[k].real(),
                  view.values[k].imag(), view.magnitude[k], view.phase_rad[k]);
    out << row_prefix << line;
  }
}

std::string spectrum_to_csv(const SpectrumView& view) {
  std::ostringstream out;
  out << kSpectrumCsvHeader << '\n';
  write_spectrum_csv_rows(out, view);
  return out.str();
}

nlohmann::json stats_to_json(const StatsSnapshot& s) {
  nlohmann::json by_bw = nlohmann::json::object();
  for (auto [code, n] : s.frames_by_bandwidth) by_bw[std::to_string(code)] = n;
  nlohmann::json by_mcs = nlohmann::json::object();
  for (auto [mcs, n] : s.frames_by_mcs) by_mcs[std::to_string(mcs)] = n;
  return {
      {"total_frames", s.total_frames},
      {"frames_by_bandwidth", by_bw},
      {"frames_by_mcs", by_mcs},
      {"avg_rssi_per_chain", s.avg_rssi_per_chain},
      {"frames_per_second", s.frames_per_second},
      {"decode_errors", s.decode_errors},
  };
}

StatsSnapshot stats_from_json(const nlohmann::json& doc) {
  StatsSnapshot s;
  s.total_frames = doc.at("total_frames").get<std::uint64_t>();
  for (const auto& [key, n] : doc.at("frames_by_bandwidth").items()) {
    s.frames_by_bandwidth[static_cast<std::uint32_t>(std::stoul(key))] = n.get<std::uint64_t>();
  }
  for (const auto& [key, n] : doc.at("frames_by_mcs").items()) {
    s.frames_by_mcs[std::stoi(key)] = n.get<std::uint64_t>();
  }
  s.avg_rssi_per_chain = doc.at("avg_rssi_per_chain").get<decltype(s.avg_rssi_per_chain)>();
  s.frames_per_second = doc.at("frames_per_second").get<double>();
  s.decode_errors = doc.at("decode_errors").get<std::uint64_t>();
  return s;
}

nlohmann::json record_to_json(const collector::CsiRecord& r, bool include_iq) {
  const auto& f = r.frame;
  auto bw = f.bandwidth();
  nlohmann::json j = {
      {"received_at_us", r.received_at_us},
      {"source", r.source.to_string()},
      {"timestamp_us", f.timestamp_us},
      {"vendor", f.vendor},
      {"chip_id", f.chip_id},
      {"peer_addr", f.peer_addr.to_string()},
      {"bw_code", f.bw},
      {"bw_mhz", bw ? bw->mhz() : 0},
      {"phy_mode", f.phy_mode},
      {"mcs", f.mcs},
      {"gi_type", f.gi_type},
      {"coding", f.coding},
      {"stbc", f.stbc},
      {"dcm", f.dcm},
      {"rssi", f.rssi},
      {"agc_gain", f.agc_gain},
      {"csi_cnt", f.csi_cnt},
  };
  if (include_iq) {
    const auto n = static_cast<std::size_t>(std::max<int>(f.csi_cnt, 0));
    j["i"] = std::vector<std::int32_t>(f.csi_i.begin(), f.csi_i.begin() + n);
    j["q"] = std::vector<std::int32_t>(f.csi_q.begin(), f.csi_q.begin() + n);
  }
  return j;
}

}  // namespace zcsi::analysis
