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

#include "specinvert/wav.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "binary_io.hpp"
#include "specinvert/errors.hpp"

namespace specinvert {

std::int16_t quantize_pcm16(double x) {
  if (std::isnan(x)) return 0;
  const double clamped = std::clamp(x, -1.0, 1.0 - 1.0 / 32768.0);
  return static_cast<std::int16_t>(std::round(clamped * 32768.0));
}

std::vector<char> wav_encode(const WavClip& clip) {
  const auto data_bytes = static_cast<std::uint32_t>(clip.samples.size() * 2);
  detail::ByteWriter w;
  w.bytes("RIFF");
  w.u32(36 + data_bytes);
  w.bytes("WAVE");
  w.bytes("fmt ");
  w.u32(16);
  w.u16(1);  // PCM
  w.u16(1);  // mono
  w.u32(clip.sample_rate);
  w.u32(clip.sample_rate * 2);
  w.u16(2);
  w.u16(16);
  w.bytes("data");
  w.u32(data_bytes);
  for (double s : clip.samples) w.u16(static_cast<std::uint16_t>(quantize_pcm16(s)));
  return w.data();
}

void wav_write(const std::filesystem::path& path, const WavClip& clip) {
  detail::write_file_atomic(path, wav_encode(clip));
}

WavClip wav_decode(std::span<const char> bytes, std::uint32_t expected_rate) {
  detail::ByteReader r(bytes, "wav");
  if (r.remaining() < 12) fail(ErrorCode::kTruncated, "wav: file shorter than a RIFF header");
  if (r.bytes(4) != "RIFF") fail(ErrorCode::kBadMagic, "wav: missing RIFF header");
  r.u32();
  if (r.bytes(4) != "WAVE") fail(ErrorCode::kBadMagic, "wav: missing WAVE tag");

  bool have_fmt = false;
  WavClip clip;
  while (r.remaining() >= 8) {
    const std::string id = r.bytes(4);
    const std::uint32_t size = r.u32();
    if (id == "fmt ") {
      if (size < 16) fail(ErrorCode::kTruncated, "wav: fmt chunk too short");
      const auto format = r.u16();
      const auto channels = r.u16();
      const auto rate = r.u32();
      r.u32();
      r.u16();
      const auto bits = r.u16();
      r.skip(size - 16 + (size & 1u));
      if (format != 1 || bits != 16) {
        fail(ErrorCode::kUnsupportedEncoding,
             "wav: only 16-bit PCM is supported (format " + std::to_string(format) + ", " +
                 std::to_string(bits) + " bits)");
      }
      if (channels != 1) {
        fail(ErrorCode::kWrongChannelCount,
             "wav: expected mono audio, got " + std::to_string(channels) + " channels");
      }
      if (rate != expected_rate) {
        fail(ErrorCode::kWrongSampleRate, "wav: sample rate " + std::to_string(rate) +
                                              " Hz, expected " + std::to_string(expected_rate) +
                                              " Hz");
      }
      clip.sample_rate = rate;
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt) fail(ErrorCode::kUnsupportedEncoding, "wav: data chunk before fmt chunk");
      if (size > r.remaining()) fail(ErrorCode::kTruncated, "wav: data chunk truncated");
      clip.samples.resize(size / 2);
      for (auto& s : clip.samples) {
        s = static_cast<double>(static_cast<std::int16_t>(r.u16())) / 32768.0;
      }
      return clip;
    } else {
      r.skip(size + (size & 1u));
    }
  }
  fail(ErrorCode::kTruncated, have_fmt ? "wav: no data chunk" : "wav: no fmt chunk");
}

WavClip wav_read(const std::filesystem::path& path, std::uint32_t expected_rate) {
  return wav_decode(detail::read_file(path), expected_rate);
}

}  // namespace specinvert
