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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "specinvert/config.hpp"

namespace specinvert {

/// Time-major log-magnitude frames plus the analysis geometry that produced
/// them. Values are stored as binary32, the same as the on-disk payload.
struct LogMagSpectrogram {
  std::uint32_t sample_rate = 16000;
  std::uint32_t fft_size = 2048;
  std::uint32_t frame_size = 800;
  std::uint32_t frame_step = 200;
  std::uint32_t num_bins = 1025;
  std::vector<float> values;

  static LogMagSpectrogram empty_like(const StreamConfig& cfg);

  std::size_t num_frames() const { return num_bins == 0 ? 0 : values.size() / num_bins; }
  std::span<const float> frame(std::size_t t) const {
    return {values.data() + t * num_bins, num_bins};
  }
  std::span<float> frame(std::size_t t) { return {values.data() + t * num_bins, num_bins}; }

  /// Copies the geometry into `base`, keeping base's emphasis and delta.
  StreamConfig geometry(StreamConfig base = {}) const;
};

/// ln(m + delta) elementwise; negative magnitudes are rejected.
std::vector<double> log_compress(std::span<const double> mag, double delta);

/// exp(v) - delta elementwise, clamped below at 0.
std::vector<double> log_expand(std::span<const double> logmag, double delta);
std::vector<double> log_expand(std::span<const float> logmag, double delta);

/// Pre-emphasis, STFT, magnitude and log compression.
LogMagSpectrogram analyze(std::span<const double> x, const StreamConfig& cfg);

/// Linear magnitudes of every frame, flattened time-major.
std::vector<double> expand_all(const LogMagSpectrogram& spec, double delta);

/// Little-endian ".lms" container: "LMS1", u32 version=1, u32 sample_rate,
/// u32 fft_size, u32 frame_size, u32 frame_step, u32 num_bins,
/// u64 num_frames, then num_frames * num_bins binary32 values.
void save_spectrogram(const LogMagSpectrogram& spec, const std::filesystem::path& path);
LogMagSpectrogram load_spectrogram(const std::filesystem::path& path);

std::vector<char> encode_spectrogram(const LogMagSpectrogram& spec);
LogMagSpectrogram decode_spectrogram(std::span<const char> bytes);

}  // namespace specinvert
