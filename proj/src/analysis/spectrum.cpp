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

#include "zcsi/analysis/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "zcsi/wire/error.hpp"

namespace zcsi::analysis {

SpectrumView to_spectrum(const wire::CsiDataFrame& frame) {
  if (frame.csi_cnt <= 0 || frame.csi_cnt > static_cast<int>(wire::kMaxSubcarriers)) {
    throw wire::WireError(wire::WireErrc::kCsiCountOutOfRange,
                          "csi_cnt " + std::to_string(frame.csi_cnt));
  }
  const auto n = static_cast<std::size_t>(frame.csi_cnt);
  SpectrumView view;
  view.subcarrier_count = n;
  view.values.reserve(n);
  view.magnitude.reserve(n);
  view.phase_rad.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double i = frame.csi_i[k];
    const double q = frame.csi_q[k];
    view.values.emplace_back(i, q);
    view.magnitude.push_back(std::hypot(i, q));
    view.phase_rad.push_back(std::atan2(q, i));
  }
  return view;
}

std::vector<double> unwrap_phase(std::span<const double> wrapped) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  std::vector<double> out(wrapped.begin(), wrapped.end());
  double offset = 0.0;
  for (std::size_t k = 1; k < wrapped.size(); ++k) {
    double delta = wrapped[k] - wrapped[k - 1];
    if (delta > std::numbers::pi) {
      offset -= kTwoPi;
    } else if (delta < -std::numbers::pi) {
      offset += kTwoPi;
    }
    out[k] = wrapped[k] + offset;
  }
  return out;
}

std::vector<double> magnitude_db(std::span<const double> magnitude) {
  std::vector<double> out;
  out.reserve(magnitude.size());
  for (double m : magnitude) {
    out.push_back(m > 0.0 ? std::max(20.0 * std::log10(m), kMagnitudeFloorDb) : kMagnitudeFloorDb);
  }
  return out;
}

std::vector<std::size_t> decimation_indices(std::size_t n, std::size_t max_points) {
  std::vector<std::size_t> idx;
  if (n == 0 || max_points == 0) return idx;
  if (n <= max_points) {
    for (std::size_t k = 0; k < n; ++k) idx.push_back(k);
    return idx;
  }
  if (max_points == 1) return {0};
  const std::size_t span = n - 1;
  std::size_t stride = (span + max_points - 2) / (max_points - 1);
  while (span % stride != 0) ++stride;
  for (std::size_t k = 0; k <= span; k += stride) idx.push_back(k);
  return idx;
}

}  // namespace zcsi::analysis
