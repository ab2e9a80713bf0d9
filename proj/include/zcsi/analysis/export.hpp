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

#include <ostream>
#include <string>

#include <json.hpp>

#include "zcsi/analysis/spectrum.hpp"
#include "zcsi/analysis/stats.hpp"
#include "zcsi/collector/record.hpp"

namespace zcsi::analysis {

inline constexpr const char* kSpectrumCsvHeader = "subcarrier,i,q,magnitude,phase";

// One row per subcarrier under kSpectrumCsvHeader (no header written here).
void write_spectrum_csv_rows(std::ostream& out, const SpectrumView& view,
                             const std::string& row_prefix = {});
std::string spectrum_to_csv(const SpectrumView& view);

nlohmann::json stats_to_json(const StatsSnapshot& stats);
StatsSnapshot stats_from_json(const nlohmann::json& doc);

// Metadata plus, optionally, the I/Q samples of a record.
nlohmann::json record_to_json(const collector::CsiRecord& record, bool include_iq);

}  // namespace zcsi::analysis
