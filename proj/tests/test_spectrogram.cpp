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
#include <filesystem>
#include <cstring>
#include <fstream>
#include <functional>

#include "specinvert/dsp.hpp"
#include "specinvert/errors.hpp"
#include "specinvert/spectrogram.hpp"
#include "support.hpp"

using namespace specinvert;
namespace fs = std::filesystem;

namespace {

fs::path temp_path(const std::string& name) {
  return fs::temp_directory_path() / ("specinvert_test_" + name);
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST_CASE("log compression and expansion") {
  const auto c = log_compress(std::vector<double>{0.0, 1.0 - 0.01}, 0.01);
  CHECK(c[0] == doctest::Approx(-4.605170185988091).epsilon(1e-15));
  CHECK(std::abs(c[1]) < 1e-16);

  const auto e = log_expand(std::vector<double>{0.0, std::log(0.01), -50.0}, 0.01);
  CHECK(e[0] == doctest::Approx(0.99).epsilon(1e-15));
  CHECK(std::abs(e[1]) < 1e-15);
  CHECK(e[2] == 0.0);

  CHECK_THROWS_AS(log_compress(std::vector<double>{-1e-9}, 0.01), Error);
}

TEST_CASE("compress/expand round trip over [0, 1e4]") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> exponent(-6.0, 4.0);
  std::vector<double> m{0.0, 1e-12, 0.5, 1.0, 1e4};
  for (int i = 0; i < 2000; ++i) m.push_back(std::pow(10.0, exponent(rng)));
  const auto back = log_expand(log_compress(m, 0.01), 0.01);
  for (std::size_t i = 0; i < m.size(); ++i) {
    CHECK(std::abs(back[i] - m[i]) <= 1e-12 * std::max(1.0, m[i]));
  }
}

TEST_CASE("analyze: silence, frame count, determinism") {
  StreamConfig cfg;
  const auto silent = analyze(std::vector<double>(1600, 0.0), cfg);
  CHECK(silent.num_frames() == 5);
  for (float v : silent.values) CHECK(v == static_cast<float>(std::log(0.01)));

  const auto x = specinvert::testing::random_signal(1200, 9);
  const auto spec = analyze(x, cfg);
  CHECK(spec.num_frames() == 3);
  CHECK(spec.num_bins == 1025);
  CHECK(spec.values.size() == 3 * 1025);
  CHECK(analyze(x, cfg).values == spec.values);
  CHECK_THROWS_AS(analyze(std::vector<double>(100, 0.0), cfg), Error);
}

TEST_CASE("analyze: full-scale sinusoid matches brute-force DFT through log compression") {
  StreamConfig cfg;
  const std::size_t k = 200;  // 1562.5 Hz
  const auto x = specinvert::testing::sine(800, k * 16000.0 / 2048.0, 0.999);
  const auto spec = analyze(x, cfg);
  REQUIRE(spec.num_frames() == 1);

  std::vector<double> frame(800);
  const auto w = hann_window(800);
  for (std::size_t n = 0; n < 800; ++n) {
    frame[n] = (x[n] - (n ? 0.97 * x[n - 1] : 0.0)) * w[n];
  }
  const auto dft = specinvert::testing::brute_force_dft(frame, 2048);
  std::size_t best = 0;
  for (std::size_t b = 0; b < spec.num_bins; ++b) {
    if (spec.frame(0)[b] > spec.frame(0)[best]) best = b;
  }
  CHECK(best == k);
  const double expected = std::log(std::abs(dft[k]) + 0.01);
  CHECK(spec.frame(0)[k] == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("analyze output satisfies the spectrogram invariants on random audio") {
  StreamConfig cfg;
  const float floor = static_cast<float>(std::log(cfg.log_delta));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(seed);
    const std::size_t len = 800 + rng() % 5000;
    const double scale = std::pow(10.0, -3.0 + 3.0 * static_cast<double>(rng() % 1000) / 1000.0);
    const auto spec = analyze(specinvert::testing::random_signal(len, seed, scale), cfg);
    CHECK(spec.num_frames() == frame_count(len, cfg));
    for (float v : spec.values) {
      REQUIRE(std::isfinite(v));
      REQUIRE(v >= floor);
    }
  }
}

TEST_CASE("spectrogram files round trip bit-exactly") {
  StreamConfig cfg;
  auto spec = analyze(specinvert::testing::random_signal(4000, 1), cfg);
  spec.values[17] = -0.0f;
  const auto path = temp_path("roundtrip.lms");
  save_spectrogram(spec, path);
  const auto back = load_spectrogram(path);
  CHECK(back.sample_rate == spec.sample_rate);
  CHECK(back.fft_size == spec.fft_size);
  CHECK(back.frame_size == spec.frame_size);
  CHECK(back.frame_step == spec.frame_step);
  CHECK(back.num_bins == spec.num_bins);
  REQUIRE(back.values.size() == spec.values.size());
  CHECK(std::memcmp(back.values.data(), spec.values.data(), spec.values.size() * 4) == 0);
  CHECK(fs::file_size(path) == 36 + spec.values.size() * 4);
  fs::remove(path);
}

TEST_CASE("empty spectrogram is a valid file") {
  const auto spec = LogMagSpectrogram::empty_like(StreamConfig{});
  const auto bytes = encode_spectrogram(spec);
  CHECK(bytes.size() == 36);
  CHECK(decode_spectrogram(bytes).num_frames() == 0);
}

TEST_CASE("malformed spectrogram files produce distinct errors") {
  const auto spec = analyze(specinvert::testing::random_signal(1000, 2), StreamConfig{});
  const auto good = encode_spectrogram(spec);

  auto bad_magic = good;
  bad_magic[0] = 'X';
  CHECK(code_of([&] { decode_spectrogram(bad_magic); }) == ErrorCode::kBadMagic);

  auto bad_version = good;
  bad_version[4] = 2;
  CHECK(code_of([&] { decode_spectrogram(bad_version); }) == ErrorCode::kVersionMismatch);

  const std::vector<char> truncated(good.begin(), good.end() - 3);
  CHECK(code_of([&] { decode_spectrogram(truncated); }) == ErrorCode::kTruncated);

  const std::vector<char> header_only(good.begin(), good.begin() + 20);
  CHECK(code_of([&] { decode_spectrogram(header_only); }) == ErrorCode::kTruncated);

  CHECK(code_of([&] { load_spectrogram(temp_path("does_not_exist.lms")); }) == ErrorCode::kIo);
}

TEST_CASE("header geometry feeds back into a StreamConfig") {
  auto spec = LogMagSpectrogram::empty_like(StreamConfig{});
  StreamConfig base;
  base.preemph_coef = 0.5;
  const auto cfg = spec.geometry(base);
  CHECK(cfg.preemph_coef == 0.5);
  CHECK(cfg.num_bins() == 1025);
  spec.num_bins = 12;
  CHECK_THROWS_AS(spec.geometry(), Error);
}
