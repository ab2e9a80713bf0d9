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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "zcsi/wire/csi_frame.hpp"

namespace zcsi::analysis {

// Per-subcarrier view of one report. Index k is the k-th reported entry;
// the mapping to physical tones is not known.
struct SpectrumView {
  std::size_t subcarrier_count = 0;
  std::vector<std::complex<double>> values;  // I + jQ
  std::vector<double> magnitude;
  std::vector<double> phase_rad;  // (-pi, pi]
};

// Converts the first csi_cnt entries. Throws wire::WireError
// {kCsiCountOutOfRange} when csi_cnt is not in 1..512.
SpectrumView to_spectrum(const wire::CsiDataFrame& frame);

// Removes 2*pi jumps between neighbours. Not applied by to_spectrum.
std::vector<double> unwrap_phase(std::span<const double> wrapped);

inline constexpr double kMagnitudeFloorDb = -120.0;

// 20*log10(|H|), zero magnitudes map to kMagnitudeFloorDb.
std::vector<double> magnitude_db(std::span<const double> magnitude);

// Picks indices 0, s, 2s, ..., n-1 with s the smallest stride dividing n-1
// that yields at most `max_points` samples. Endpoints are always kept.
std::vector<std::size_t> decimation_indices(std::size_t n, std::size_t max_points);

template <typename T>
std::vector<T> decimate(std::span<const T> values, std::size_t max_points) {
  std::vector<T> out;
  for (std::size_t idx : decimation_indices(values.size(), max_points)) out.push_back(values[idx]);
  return out;
}

}  // namespace zcsi::analysis
