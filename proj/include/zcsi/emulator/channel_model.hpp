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
#include <cstdint>
#include <random>
#include <span>
#include <variant>
#include <vector>

namespace zcsi::emulator {

struct Flat {
  double gain = 1000.0;
};

struct Tap {
  int delay_samples = 0;
  std::complex<double> amplitude{1.0, 0.0};
};

struct Multipath {
  std::vector<Tap> taps;
};

struct ChannelModel {
  std::variant<Flat, Multipath> variant = Flat{};
  // Per-component standard deviation of complex Gaussian noise, in the same
  // units as the response before scaling.
  double noise_sigma = 0.0;
  // Multiplier applied before rounding to 16 bits.
  double quantizer_scale = 1.0;

  // Throws std::invalid_argument.
  void validate() const;
};

// Noise-free H[k] = sum a_i exp(-j 2 pi k d_i / n) for k in 0..n-1.
std::vector<std::complex<double>> frequency_response(const ChannelModel& model, int n);

// round(scale * v) saturated to the int16 range.
std::int32_t quantize(double v, double scale) noexcept;

// Fills the first n entries of i/q with the quantized response plus noise
// drawn from `rng`.
void synthesize(const ChannelModel& model, int n, std::mt19937_64& rng, std::span<std::int32_t> i,
                std::span<std::int32_t> q);

}  // namespace zcsi::emulator
