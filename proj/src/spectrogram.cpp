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

#include "specinvert/spectrogram.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "binary_io.hpp"
#include "specinvert/dsp.hpp"
#include "specinvert/errors.hpp"

namespace specinvert {
namespace {

constexpr std::string_view kMagic = "LMS1";
constexpr std::uint32_t kVersion = 1;

template <typename T>
std::vector<double> expand_impl(std::span<const T> logmag, double delta) {
  std::vector<double> out(logmag.size());
  for (std::size_t i = 0; i < logmag.size(); ++i) {
    out[i] = std::max(std::exp(static_cast<double>(logmag[i])) - delta, 0.0);
  }
  return out;
}

}  // namespace

LogMagSpectrogram LogMagSpectrogram::empty_like(const StreamConfig& cfg) {
  LogMagSpectrogram spec;
  spec.sample_rate = static_cast<std::uint32_t>(cfg.sample_rate);
  spec.fft_size = static_cast<std::uint32_t>(cfg.fft_size);
  spec.frame_size = static_cast<std::uint32_t>(cfg.frame_size);
  spec.frame_step = static_cast<std::uint32_t>(cfg.frame_step);
  spec.num_bins = static_cast<std::uint32_t>(cfg.num_bins());
  return spec;
}

StreamConfig LogMagSpectrogram::geometry(StreamConfig base) const {
  base.sample_rate = sample_rate;
  base.fft_size = fft_size;
  base.frame_size = frame_size;
  base.frame_step = frame_step;
  require(base.num_bins() == num_bins,
          "spectrogram has " + std::to_string(num_bins) + " bins but fft_size " +
              std::to_string(fft_size) + " implies " + std::to_string(base.num_bins()));
  return base;
}

std::vector<double> log_compress(std::span<const double> mag, double delta) {
  require(std::isfinite(delta) && delta > 0.0, "log delta must be positive");
  std::vector<double> out(mag.size());
  for (std::size_t i = 0; i < mag.size(); ++i) {
    require(mag[i] >= 0.0, "log_compress: negative magnitude at index " + std::to_string(i));
    out[i] = std::log(mag[i] + delta);
  }
  return out;
}

std::vector<double> log_expand(std::span<const double> logmag, double delta) {
  return expand_impl(logmag, delta);
}

std::vector<double> log_expand(std::span<const float> logmag, double delta) {
  return expand_impl(logmag, delta);
}

LogMagSpectrogram analyze(std::span<const double> x, const StreamConfig& cfg) {
  const auto emphasized = preemphasis(x, cfg.preemph_coef);
  const auto stft = batch_stft(emphasized, cfg);
  auto spec = LogMagSpectrogram::empty_like(cfg);
  spec.values.reserve(stft.size() * cfg.num_bins());
  std::vector<double> mag(cfg.num_bins());
  for (const auto& frame : stft) {
    for (std::size_t k = 0; k < frame.size(); ++k) mag[k] = std::abs(frame[k]);
    for (double v : log_compress(mag, cfg.log_delta)) spec.values.push_back(static_cast<float>(v));
  }
  return spec;
}

std::vector<double> expand_all(const LogMagSpectrogram& spec, double delta) {
  return log_expand(std::span<const float>(spec.values), delta);
}

std::vector<char> encode_spectrogram(const LogMagSpectrogram& spec) {
  require(spec.num_bins > 0 && spec.values.size() % spec.num_bins == 0,
          "spectrogram payload is not a whole number of frames");
  detail::ByteWriter w;
  w.bytes(kMagic);
  w.u32(kVersion);
  w.u32(spec.sample_rate);
  w.u32(spec.fft_size);
  w.u32(spec.frame_size);
  w.u32(spec.frame_step);
  w.u32(spec.num_bins);
  w.u64(spec.num_frames());
  for (float v : spec.values) w.f32(v);
  return w.data();
}

LogMagSpectrogram decode_spectrogram(std::span<const char> bytes) {
  detail::ByteReader r(bytes, "spectrogram");
  if (r.remaining() < kMagic.size() || r.bytes(kMagic.size()) != kMagic) {
    fail(ErrorCode::kBadMagic, "spectrogram: bad magic, expected \"LMS1\"");
  }
  const auto version = r.u32();
  if (version != kVersion) {
    fail(ErrorCode::kVersionMismatch,
         "spectrogram: unsupported version " + std::to_string(version));
  }
  LogMagSpectrogram spec;
  spec.sample_rate = r.u32();
  spec.fft_size = r.u32();
  spec.frame_size = r.u32();
  spec.frame_step = r.u32();
  spec.num_bins = r.u32();
  const auto frames = r.u64();
  if (spec.num_bins == 0) fail(ErrorCode::kInvalidArgument, "spectrogram: zero bins");
  const std::uint64_t count = frames * spec.num_bins;
  if (count / spec.num_bins != frames || count * 4 > r.remaining()) {
    fail(ErrorCode::kTruncated, "spectrogram: payload truncated, header announces " +
                                    std::to_string(frames) + " frames");
  }
  spec.values.resize(count);
  for (auto& v : spec.values) v = r.f32();
  return spec;
}

void save_spectrogram(const LogMagSpectrogram& spec, const std::filesystem::path& path) {
  detail::write_file_atomic(path, encode_spectrogram(spec));
}

LogMagSpectrogram load_spectrogram(const std::filesystem::path& path) {
  return decode_spectrogram(detail::read_file(path));
}

}  // namespace specinvert
