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

#include <doctest.h>

#include <cmath>
#include <limits>

#include "specinvert/dsp.hpp"
#include "specinvert/errors.hpp"
#include "specinvert/fft.hpp"
#include "support.hpp"

using namespace specinvert;
using specinvert::testing::brute_force_dft;
using specinvert::testing::random_signal;

namespace {

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b, std::size_t from,
                    std::size_t to) {
  double m = 0.0;
  for (std::size_t i = from; i < to; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("preemphasis evaluates the first-order difference") {
  CHECK(preemphasis(std::vector<double>(5, 0.0), 0.97) == std::vector<double>(5, 0.0));

  auto y = preemphasis(std::vector<double>{1, 0, 0}, 0.97);
  CHECK(y[0] == 1.0);
  CHECK(y[1] == doctest::Approx(-0.97).epsilon(1e-15));
  CHECK(y[2] == 0.0);

  y = preemphasis(std::vector<double>{1, 1, 1}, 0.97);
  CHECK(y[0] == 1.0);
  CHECK(y[1] == doctest::Approx(0.03).epsilon(1e-12));
  CHECK(y[2] == doctest::Approx(0.03).epsilon(1e-12));

  CHECK(preemphasis(std::vector<double>{}, 0.97).empty());
}

TEST_CASE("preemphasis rejects non-finite input and bad coefficients") {
  std::vector<double> x{0.1, std::numeric_limits<double>::quiet_NaN()};
  try {
    preemphasis(x, 0.97);
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNonFinite);
  }
  CHECK_THROWS_AS(preemphasis(std::vector<double>{1.0}, 1.0), Error);
  CHECK_THROWS_AS(preemphasis(std::vector<double>{1.0}, -0.1), Error);
}

TEST_CASE("deemphasis unrolls the recursion and normalizes by 1 + coef") {
  CHECK(deemphasis(std::vector<double>(4, 0.0), 0.97) == std::vector<double>(4, 0.0));

  const auto y = deemphasis(std::vector<double>{1, 0, 0}, 0.97);
  CHECK(y[0] == doctest::Approx(1.0 / 1.97).epsilon(1e-14));
  CHECK(y[1] == doctest::Approx(0.97 / 1.97).epsilon(1e-14));
  CHECK(y[2] == doctest::Approx(0.9409 / 1.97).epsilon(1e-14));
}

TEST_CASE("deemphasis inverts preemphasis up to the output normalization") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto x = random_signal(1000, seed, 1.0);
    const auto y = deemphasis(preemphasis(x, 0.97), 0.97);
    for (std::size_t i = 0; i < x.size(); ++i) REQUIRE(std::abs(y[i] * 1.97 - x[i]) < 1e-9);
  }
}

TEST_CASE("streaming deemphasis matches the one-shot filter across chunk boundaries") {
  const auto x = random_signal(997, 11);
  const auto whole = deemphasis(x, 0.97);
  Deemphasis filter(0.97);
  std::vector<double> chunked;
  for (std::size_t pos = 0; pos < x.size();) {
    const std::size_t n = std::min<std::size_t>(1 + pos % 37, x.size() - pos);
    auto part = filter.process(std::span<const double>(x).subspan(pos, n));
    chunked.insert(chunked.end(), part.begin(), part.end());
    pos += n;
  }
  CHECK(chunked == whole);
}

TEST_CASE("hann window") {
  const auto w = hann_window(4);
  CHECK(w[0] == 0.0);
  CHECK(w[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(w[2] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(w[3] == doctest::Approx(0.5).epsilon(1e-15));
  for (std::size_t len : {2u, 3u, 7u, 800u}) CHECK(hann_window(len)[0] == 0.0);
  CHECK_THROWS_AS(hann_window(1), Error);
}

TEST_CASE("squared hann at 75% overlap sums to a constant") {
  const auto w = hann_window(800);
  // Numeric oracle: sum over every shift that covers n.
  std::vector<double> sums;
  for (std::size_t n = 800; n < 1600; ++n) {
    double s = 0.0;
    for (std::size_t k = 0; k * 200 <= n; ++k) {
      const std::size_t i = n - k * 200;
      if (i < 800) s += w[i] * w[i];
    }
    sums.push_back(s);
  }
  for (double s : sums) CHECK(s == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("real FFT agrees with a brute-force DFT on small sizes") {
  for (std::size_t n : {2u, 8u, 16u, 64u}) {
    RealFft fft(n);
    const auto x = random_signal(n, n);
    std::vector<std::complex<double>> got(n / 2 + 1);
    fft.forward(x, got);
    const auto want = brute_force_dft(x, n);
    for (std::size_t k = 0; k < got.size(); ++k) CHECK(std::abs(got[k] - want[k]) < 1e-12);

    std::vector<double> back(n);
    fft.inverse(got, back);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(back[i] - x[i]) < 1e-13);
  }
  CHECK_THROWS_AS(RealFft(7), Error);
}

TEST_CASE("batch_stft framing") {
  StreamConfig cfg;
  auto spec = batch_stft(std::vector<double>(1000, 0.0), cfg);
  REQUIRE(spec.size() == 2);
  for (const auto& frame : spec) {
    CHECK(frame.size() == 1025);
    for (auto v : frame) CHECK(v == std::complex<double>(0.0, 0.0));
  }
  CHECK(batch_stft(std::vector<double>(800, 0.1), cfg).size() == 1);
  CHECK(batch_stft(std::vector<double>(1199, 0.1), cfg).size() == 2);
  CHECK(batch_stft(std::vector<double>(1200, 0.1), cfg).size() == 3);
  CHECK_THROWS_AS(batch_stft(std::vector<double>(799, 0.1), cfg), Error);
}

TEST_CASE("bin-centred sinusoid peaks at its bin, matching a brute-force DFT") {
  StreamConfig cfg;
  const std::size_t k = 64;  // 500 Hz
  const auto x = specinvert::testing::sine(2000, k * 16000.0 / 2048.0, 0.8);
  const auto spec = batch_stft(x, cfg);
  const auto w = hann_window(cfg.frame_size);
  for (std::size_t t = 0; t < spec.size(); ++t) {
    std::size_t best = 0;
    for (std::size_t b = 1; b < spec[t].size(); ++b) {
      if (std::abs(spec[t][b]) > std::abs(spec[t][best])) best = b;
    }
    CHECK(best == k);
  }
  std::vector<double> frame(cfg.frame_size);
  for (std::size_t n = 0; n < cfg.frame_size; ++n) frame[n] = x[n] * w[n];
  const auto oracle = brute_force_dft(frame, cfg.fft_size);
  for (std::size_t b = 0; b < oracle.size(); ++b) CHECK(std::abs(spec[0][b] - oracle[b]) < 1e-9);
}

TEST_CASE("stft is linear") {
  StreamConfig cfg;
  const auto x = random_signal(3000, 5);
  std::vector<double> ax(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) ax[i] = -2.5 * x[i];
  const auto s = batch_stft(x, cfg);
  const auto as = batch_stft(ax, cfg);
  for (std::size_t t = 0; t < s.size(); ++t) {
    for (std::size_t k = 0; k < s[t].size(); ++k) CHECK(std::abs(as[t][k] + 2.5 * s[t][k]) < 1e-9);
  }
}

TEST_CASE("istft(stft(x)) reconstructs interior samples") {
  StreamConfig cfg;
  for (std::uint64_t seed = 20; seed < 25; ++seed) {
    const auto x = random_signal(8000 + 37 * seed, seed);
    const auto y = batch_istft(batch_stft(x, cfg), cfg);
    CHECK(y.size() == (frame_count(x.size(), cfg) - 1) * cfg.frame_step + cfg.frame_size);
    CHECK(max_abs_diff(x, y, cfg.frame_size, y.size() - cfg.frame_size) < 1e-6);
  }
}

TEST_CASE("reconstruction holds for a small non-default geometry") {
  StreamConfig cfg;
  cfg.fft_size = 64;
  cfg.frame_size = 48;
  cfg.frame_step = 12;
  const auto x = random_signal(600, 3);
  const auto y = batch_istft(batch_stft(x, cfg), cfg);
  CHECK(max_abs_diff(x, y, cfg.frame_size, y.size() - cfg.frame_size) < 1e-9);
}

TEST_CASE("batch_istft edge cases") {
  StreamConfig cfg;
  CHECK_THROWS_AS(batch_istft({}, cfg), Error);
  const ComplexSpectrogram zeros(3, ComplexFrame(1025));
  for (double v : batch_istft(zeros, cfg)) CHECK(v == 0.0);
  CHECK_THROWS_AS(batch_istft(ComplexSpectrogram(1, ComplexFrame(10)), cfg), Error);
}

TEST_CASE("single windowed frame inverts to the windowed frame over its normalization") {
  StreamConfig cfg;
  const auto x = specinvert::testing::sine(800, 440.0, 0.7);
  const auto spec = batch_stft(x, cfg);
  REQUIRE(spec.size() == 1);
  const auto y = batch_istft(spec, cfg);
  const auto w = hann_window(800);
  // Oracle: direct inverse DFT of the single frame.
  const std::size_t n_fft = cfg.fft_size;
  for (std::size_t n = 0; n < 800; n += 7) {
    double acc = spec[0][0].real() + spec[0][n_fft / 2].real() * ((n % 2) ? -1.0 : 1.0);
    for (std::size_t k = 1; k < n_fft / 2; ++k) {
      const double a = 2.0 * std::numbers::pi * static_cast<double>(k * n % n_fft) / n_fft;
      acc += 2.0 * (spec[0][k].real() * std::cos(a) - spec[0][k].imag() * std::sin(a));
    }
    acc /= static_cast<double>(n_fft);
    const double expected = acc * w[n] / std::max(w[n] * w[n], kOlaFloor);
    CHECK(std::abs(y[n] - expected) < 1e-9);
  }
}

TEST_CASE("streaming istft reproduces the batch inverse") {
  StreamConfig cfg;
  const auto x = random_signal(5000, 77);
  const auto spec = batch_stft(x, cfg);
  const auto batch = batch_istft(spec, cfg);

  StreamingIstft stream(cfg);
  std::vector<double> out;
  for (std::size_t t = 0; t < spec.size(); ++t) {
    const auto hop = stream.push(spec[t]);
    REQUIRE(hop.size() == cfg.frame_step);
    if (t == 0) {
      for (std::size_t n = 0; n < hop.size(); ++n) CHECK(std::abs(hop[n] - batch[n]) < 1e-12);
    }
    out.insert(out.end(), hop.begin(), hop.end());
  }
  const auto tail = stream.flush();
  CHECK(tail.size() == cfg.frame_size - cfg.frame_step);
  out.insert(out.end(), tail.begin(), tail.end());
  REQUIRE(out.size() == batch.size());
  CHECK(max_abs_diff(out, batch, 0, out.size()) < 1e-9);
  CHECK(stream.frames_pushed() == 0);
}

TEST_CASE("streaming istft: zero frames, uninitialized state, width checks") {
  StreamConfig cfg;
  StreamingIstft stream(cfg);
  const ComplexFrame zero(cfg.num_bins());
  const auto hop = stream.push(zero);
  CHECK(hop == std::vector<double>(cfg.frame_step, 0.0));
  CHECK_THROWS_AS(stream.push(ComplexFrame(12)), Error);

  StreamingIstft uninit;
  CHECK_FALSE(uninit.initialized());
  CHECK_THROWS_AS(uninit.push(zero), Error);
  CHECK_THROWS_AS(uninit.flush(), Error);
}
