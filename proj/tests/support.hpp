// Copyright 2026 The specinvert Authors.
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

// Test-only oracles and signal generators. Nothing here calls into the FFT
// or overlap-add code it is used to check.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace specinvert::testing {

// O(N^2) DFT of x zero-padded to n points; returns bins 0..n/2.
inline std::vector<std::complex<double>> brute_force_dft(const std::vector<double>& x,
                                                         std::size_t n) {
  std::vector<std::complex<double>> out(n / 2 + 1);
  for (std::size_t k = 0; k <= n / 2; ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t t = 0; t < x.size() && t < n; ++t) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(k * t % n) /
                           static_cast<double>(n);
      acc += x[t] * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    out[k] = acc;
  }
  return out;
}

inline std::vector<double> random_signal(std::size_t n, std::uint64_t seed, double scale = 0.5) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-scale, scale);
  std::vector<double> x(n);
  for (auto& v : x) v = dist(rng);
  return x;
}

inline std::vector<double> sine(std::size_t n, double freq_hz, double amp = 0.5,
                                double rate = 16000.0, double phase = 0.0) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = amp * std::sin(2.0 * std::numbers::pi * freq_hz * static_cast<double>(i) / rate + phase);
  }
  return x;
}

inline std::vector<double> multi_sine(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> f(120.0, 3500.0);
  std::uniform_real_distribution<double> ph(0.0, 2.0 * std::numbers::pi);
  std::vector<double> x(n, 0.0);
  for (int c = 0; c < 5; ++c) {
    const auto s = sine(n, f(rng), 0.12, 16000.0, ph(rng));
    for (std::size_t i = 0; i < n; ++i) x[i] += s[i];
  }
  return x;
}

// Voiced-speech stand-in: a harmonic source gliding in pitch, shaped by two
// moving formant peaks and a syllable-rate envelope, plus a little noise.
inline std::vector<double> speech_like(std::size_t n, std::uint64_t seed, double rate = 16000.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double f0_start = 90.0 + 120.0 * u(rng);
  const double f0_end = 90.0 + 160.0 * u(rng);
  const double f1 = 400.0 + 500.0 * u(rng);
  const double f2 = 1200.0 + 1200.0 * u(rng);
  const double syllable_hz = 3.0 + 2.0 * u(rng);
  std::normal_distribution<double> noise(0.0, 0.003);
  std::vector<double> x(n, 0.0);
  double phase = 0.0;
  const double dur = static_cast<double>(n) / rate;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / rate;
    const double f0 = f0_start + (f0_end - f0_start) * t / dur;
    phase += 2.0 * std::numbers::pi * f0 / rate;
    double v = 0.0;
    for (int h = 1; h * f0 < 7000.0 && h <= 40; ++h) {
      const double fh = h * f0;
      const double g1 = std::exp(-0.5 * std::pow((fh - f1) / 150.0, 2));
      const double g2 = 0.6 * std::exp(-0.5 * std::pow((fh - f2) / 250.0, 2));
      v += (g1 + g2 + 0.02) * std::sin(h * phase) / std::sqrt(static_cast<double>(h));
    }
    const double env = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * syllable_hz * t));
    x[i] = 0.3 * env * v + noise(rng);
  }
  return x;
}

}  // namespace specinvert::testing
