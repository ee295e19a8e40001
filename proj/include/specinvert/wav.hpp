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

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace specinvert {

/// Mono PCM16 audio as floats in [-1, 1).
struct WavClip {
  std::vector<double> samples;
  std::uint32_t sample_rate = 16000;
};

/// Accepts RIFF/WAVE, PCM16, mono at `expected_rate`; other chunks are
/// skipped. Rejections: kUnsupportedEncoding, kWrongChannelCount,
/// kWrongSampleRate, kBadMagic, kTruncated.
WavClip wav_read(const std::filesystem::path& path, std::uint32_t expected_rate = 16000);
WavClip wav_decode(std::span<const char> bytes, std::uint32_t expected_rate = 16000);

/// Clamps to [-1, 1 - 2^-15] and rounds half away from zero.
void wav_write(const std::filesystem::path& path, const WavClip& clip);
std::vector<char> wav_encode(const WavClip& clip);

std::int16_t quantize_pcm16(double x);

}  // namespace specinvert
