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

#include <cmath>
#include <complex>
#include <numbers>
#include <set>

#include <gtest/gtest.h>

#include "zcsi/emulator/channel_model.hpp"
#include "zcsi/emulator/frame_generator.hpp"
#include "zcsi/wire/csi_frame.hpp"

namespace zcsi::emulator {
namespace {

// Direct DFT of a time-domain tap vector, written out independently of the
// emulator's closed form.
std::vector<std::complex<double>> dft_oracle(const std::vector<Tap>& taps, int n) {
  std::vector<std::complex<double>> h(n);
  for (const auto& t : taps) h[((t.delay_samples % n) + n) % n] += t.amplitude;
  std::vector<std::complex<double>> out(n);
  for (int k = 0; k < n; ++k) {
    for (int m = 0; m < n; ++m) {
      double ang = -2.0 * std::numbers::pi * k * m / n;
      out[k] += h[m] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
  }
  return out;
}

double wrap(double a) { return std::remainder(a, 2 * std::numbers::pi); }

TEST(ChannelModel, FlatGainIsExact) {
  ChannelModel m{Flat{1000.0}};
  std::mt19937_64 rng(1);
  std::vector<std::int32_t> i(64), q(64);
  synthesize(m, 64, rng, i, q);
  for (int k = 0; k < 64; ++k) {
    EXPECT_EQ(i[k], 1000);
    EXPECT_EQ(q[k], 0);
    EXPECT_EQ(std::hypot(i[k], q[k]), 1000.0);
  }
}

TEST(ChannelModel, SingleTapMatchesDftOracle) {
  const std::vector<Tap> taps{{4, {1.0, 0.0}}};
  ChannelModel m{Multipath{taps}};
  auto h = frequency_response(m, 64);
  auto oracle = dft_oracle(taps, 64);
  for (int k = 0; k < 64; ++k) EXPECT_LT(std::abs(h[k] - oracle[k]), 1e-9) << k;
}

TEST(ChannelModel, SingleTapPhaseSlopeAfterQuantization) {
  const double scale = 8192;
  ChannelModel m{Multipath{{{4, {1.0, 0.0}}}}, 0.0, scale};
  std::mt19937_64 rng(1);
  std::vector<std::int32_t> i(64), q(64);
  synthesize(m, 64, rng, i, q);
  const double expected = wrap(-2 * std::numbers::pi * 4 / 64);
  // Rounding moves each sample by at most half a step on each axis.
  const double tol = 2.0 / scale;
  for (int k = 0; k + 1 < 64; ++k) {
    double d = wrap(std::atan2(q[k + 1], i[k + 1]) - std::atan2(q[k], i[k]));
    EXPECT_NEAR(d, expected, tol) << k;
  }
}

TEST(ChannelModel, TwoTapsMatchOracle) {
  const std::vector<Tap> taps{{0, {0.8, 0.0}}, {3, {0.0, -0.4}}, {70, {0.1, 0.1}}};
  ChannelModel m{Multipath{taps}};
  for (int n : {64, 128, 512}) {
    auto h = frequency_response(m, n);
    auto oracle = dft_oracle(taps, n);
    for (int k = 0; k < n; ++k) EXPECT_LT(std::abs(h[k] - oracle[k]), 1e-9);
  }
}

TEST(ChannelModel, QuantizerSaturates) {
  EXPECT_EQ(quantize(1e9, 1.0), 32767);
  EXPECT_EQ(quantize(-1e9, 1.0), -32768);
  EXPECT_EQ(quantize(2.5, 2.0), 5);
  EXPECT_EQ(quantize(-0.4, 1.0), 0);
  EXPECT_EQ(quantize(std::nan(""), 1.0), 0);
}

TEST(ChannelModel, Validation) {
  EXPECT_THROW((ChannelModel{Multipath{}}.validate()), std::invalid_argument);
  EXPECT_THROW((ChannelModel{Flat{}, -1.0}.validate()), std::invalid_argument);
  EXPECT_THROW((ChannelModel{Flat{}, 0.0, 0.0}.validate()), std::invalid_argument);
  EXPECT_NO_THROW(ChannelModel{}.validate());
}

TEST(ChannelModel, NoiseIsSeeded) {
  ChannelModel m{Flat{1000.0}, 10.0};
  std::vector<std::int32_t> a(64), b(64), c(64), d(64);
  std::mt19937_64 r1(5), r2(5);
  synthesize(m, 64, r1, a, b);
  synthesize(m, 64, r2, c, d);
  EXPECT_EQ(a, c);
  EXPECT_EQ(b, d);
  EXPECT_NE(std::set<std::int32_t>(a.begin(), a.end()).size(), 1u);
}

GeneratorConfig gen_config() {
  GeneratorConfig g;
  g.stations = {{wire::MacAddress{{2, 0, 0, 0, 0, 1}}, 1, 9, {-40, -42, -44, 0}},
                {wire::MacAddress{{2, 0, 0, 0, 0, 2}}, 3, 11, {-50}}};
  g.channel.noise_sigma = 3.0;
  g.rng_seed = 42;
  return g;
}

ApState reporting() {
  ApState s;
  s.phase = ApPhase::kEnabled;
  s.reporting = true;
  return s;
}

TEST(FrameGenerator, PopulatesFields) {
  auto g = gen_config();
  auto f = generate_frame(g, reporting(), 0, 123456789, 0);
  EXPECT_EQ(f.vendor, 2);
  EXPECT_EQ(f.chip_id, 1u);
  EXPECT_EQ(f.magic >> 16, 0xCAFEu);
  EXPECT_EQ(f.timestamp_us, 123456789u);
  EXPECT_EQ(f.bw, 1u);
  EXPECT_EQ(f.mcs, 9);
  EXPECT_EQ(f.peer_addr, g.stations[0].mac);
  EXPECT_EQ(f.csi_cnt, 128);
  for (int c = 0; c < 3; ++c) {
    EXPECT_NE(f.rssi[c], 0);
    EXPECT_LE(std::abs(f.rssi[c] - g.stations[0].rssi_baseline[c]), 2);
  }
  for (std::size_t c = 3; c < wire::kChainSlots; ++c) EXPECT_EQ(f.rssi[c], 0);
  for (std::size_t k = 128; k < wire::kMaxSubcarriers; ++k) {
    EXPECT_EQ(f.csi_i[k], 0);
    EXPECT_EQ(f.csi_q[k], 0);
  }
  auto round = wire::decode_csi_frame(wire::encode_csi_frame(f));
  EXPECT_EQ(round, f);
  EXPECT_FALSE(wire::inspect_frame(round).any());

  auto wide = generate_frame(g, reporting(), 1, 0, 0);
  EXPECT_EQ(wide.csi_cnt, 512);
}

TEST(FrameGenerator, DeterministicPerSeedAndTick) {
  auto g = gen_config();
  EXPECT_EQ(generate_frame(g, reporting(), 0, 1, 7), generate_frame(g, reporting(), 0, 1, 7));
  EXPECT_NE(generate_frame(g, reporting(), 0, 1, 7).csi_i, generate_frame(g, reporting(), 0, 1, 8).csi_i);
  auto other = g;
  other.rng_seed = 43;
  EXPECT_NE(generate_frame(g, reporting(), 0, 1, 7).csi_i,
            generate_frame(other, reporting(), 0, 1, 7).csi_i);
}

TEST(FrameGenerator, RespectsPreconditions) {
  auto g = gen_config();
  EXPECT_THROW(generate_frame(g, ApState{}, 0, 0, 0), std::logic_error);
  auto s = reporting();
  s.filter = {g.stations[1].mac};
  EXPECT_THROW(generate_frame(g, s, 0, 0, 0), std::logic_error);
  EXPECT_NO_THROW(generate_frame(g, s, 1, 0, 0));
  EXPECT_THROW(generate_frame(g, s, 2, 0, 0), std::out_of_range);
  EXPECT_EQ(eligible_stations(g, s), std::vector<std::size_t>{1});
  EXPECT_EQ(eligible_stations(g, reporting()), (std::vector<std::size_t>{0, 1}));
  EXPECT_TRUE(eligible_stations(g, ApState{}).empty());
}

}  // namespace
}  // namespace zcsi::emulator
