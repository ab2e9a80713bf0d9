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

#include "zcsi/emulator/channel_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace zcsi::emulator {

void ChannelModel::validate() const {
  if (const auto* mp = std::get_if<Multipath>(&variant); mp && mp->taps.empty()) {
    throw std::invalid_argument("multipath channel needs at least one tap");
  }
  if (!(noise_sigma >= 0.0)) throw std::invalid_argument("noise_sigma must be >= 0");
  if (!(quantizer_scale > 0.0) || !std::isfinite(quantizer_scale)) {
    throw std::invalid_argument("quantizer_scale must be positive");
  }
}

std::vector<std::complex<double>> frequency_response(const ChannelModel& model, int n) {
  if (n <= 0) throw std::invalid_argument("subcarrier count must be positive");
  std::vector<std::complex<double>> h(static_cast<std::size_t>(n));
  if (const auto* flat = std::get_if<Flat>(&model.variant)) {
    std::fill(h.begin(), h.end(), std::complex<double>(flat->gain, 0.0));
    return h;
  }
  const auto& taps = std::get<Multipath>(model.variant).taps;
  for (int k = 0; k < n; ++k) {
    std::complex<double> acc{};
    for (const auto& tap : taps) {
      // Reduce k*d mod n first so large indices keep full precision.
      long long kd = (static_cast<long long>(k) * tap.delay_samples) % n;
      double angle = -2.0 * std::numbers::pi * static_cast<double>(kd) / n;
      acc += tap.amplitude * std::polar(1.0, angle);
    }
    h[static_cast<std::size_t>(k)] = acc;
  }
  return h;
}

std::int32_t quantize(double v, double scale) noexcept {
  constexpr double lo = std::numeric_limits<std::int16_t>::min();
  constexpr double hi = std::numeric_limits<std::int16_t>::max();
  double r = std::round(v * scale);
  if (std::isnan(r)) return 0;
  return static_cast<std::int32_t>(std::clamp(r, lo, hi));
}

void synthesize(const ChannelModel& model, int n, std::mt19937_64& rng, std::span<std::int32_t> i,
                std::span<std::int32_t> q) {
  if (i.size() < static_cast<std::size_t>(n) || q.size() < static_cast<std::size_t>(n)) {
    throw std::invalid_argument("output spans too small");
  }
  auto h = frequency_response(model, n);
  std::normal_distribution<double> noise(0.0, model.noise_sigma > 0 ? model.noise_sigma : 1.0);
  for (int k = 0; k < n; ++k) {
    auto v = h[static_cast<std::size_t>(k)];
    if (model.noise_sigma > 0) v += std::complex<double>(noise(rng), noise(rng));
    i[static_cast<std::size_t>(k)] = quantize(v.real(), model.quantizer_scale);
    q[static_cast<std::size_t>(k)] = quantize(v.imag(), model.quantizer_scale);
  }
}

}  // namespace zcsi::emulator
