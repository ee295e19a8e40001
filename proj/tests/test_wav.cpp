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

#include <cstring>
#include <filesystem>
#include <functional>
#include <random>

#include "../src/binary_io.hpp"
#include "specinvert/errors.hpp"
#include "specinvert/wav.hpp"

using namespace specinvert;
namespace fs = std::filesystem;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::kInvalidArgument;
}

std::vector<char> header(std::uint16_t format, std::uint16_t channels, std::uint32_t rate,
                         std::uint16_t bits, std::uint32_t data_bytes) {
  detail::ByteWriter w;
  w.bytes("RIFF");
  w.u32(36 + data_bytes);
  w.bytes("WAVE");
  w.bytes("fmt ");
  w.u32(16);
  w.u16(format);
  w.u16(channels);
  w.u32(rate);
  w.u32(rate * channels * bits / 8);
  w.u16(static_cast<std::uint16_t>(channels * bits / 8));
  w.u16(bits);
  w.bytes("data");
  w.u32(data_bytes);
  for (std::uint32_t i = 0; i < data_bytes; ++i) w.u8(0);
  return w.data();
}

}  // namespace

TEST_CASE("quantization rounds half away from zero and clamps") {
  CHECK(quantize_pcm16(0.0) == 0);
  CHECK(quantize_pcm16(1.0) == 32767);
  CHECK(quantize_pcm16(-1.0) == -32768);
  CHECK(quantize_pcm16(-2.0) == -32768);
  CHECK(quantize_pcm16(0.5 / 32768.0) == 1);
  CHECK(quantize_pcm16(-0.5 / 32768.0) == -1);
  CHECK(quantize_pcm16(0.49 / 32768.0) == 0);
}

TEST_CASE("wav round trip is bit-exact") {
  WavClip clip;
  std::mt19937_64 rng(3);
  for (int i = 0; i < 5000; ++i) {
    clip.samples.push_back(static_cast<double>(static_cast<std::int16_t>(rng() & 0xffff)) / 32768.0);
  }
  const auto path = fs::temp_directory_path() / "specinvert_test_clip.wav";
  wav_write(path, clip);
  const auto back = wav_read(path);
  CHECK(back.sample_rate == 16000);
  CHECK(back.samples == clip.samples);
  fs::remove(path);
}

TEST_CASE("zero-length clip is a bare 44-byte file") {
  const auto bytes = wav_encode(WavClip{});
  CHECK(bytes.size() == 44);
  CHECK(wav_decode(bytes).samples.empty());
}

TEST_CASE("unsupported wav files are rejected with distinct diagnostics") {
  CHECK(code_of([] { wav_decode(header(1, 1, 44100, 16, 4)); }) == ErrorCode::kWrongSampleRate);
  try {
    wav_decode(header(1, 1, 44100, 16, 4));
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("44100") != std::string::npos);
  }
  CHECK(code_of([] { wav_decode(header(1, 2, 16000, 16, 4)); }) == ErrorCode::kWrongChannelCount);
  CHECK(code_of([] { wav_decode(header(3, 1, 16000, 32, 8)); }) == ErrorCode::kUnsupportedEncoding);
  CHECK(code_of([] { wav_decode(header(1, 1, 16000, 8, 4)); }) == ErrorCode::kUnsupportedEncoding);

  auto bad = header(1, 1, 16000, 16, 4);
  bad[0] = 'X';
  CHECK(code_of([&] { wav_decode(bad); }) == ErrorCode::kBadMagic);

  auto cut = header(1, 1, 16000, 16, 40);
  cut.resize(cut.size() - 10);
  CHECK(code_of([&] { wav_decode(cut); }) == ErrorCode::kTruncated);
}

TEST_CASE("unknown chunks are skipped") {
  auto bytes = wav_encode(WavClip{{0.25, -0.5}, 16000});
  std::vector<char> with_list(bytes.begin(), bytes.begin() + 12);
  const char list[] = {'L', 'I', 'S', 'T', 3, 0, 0, 0, 'a', 'b', 'c', 0};
  with_list.insert(with_list.end(), std::begin(list), std::end(list));
  with_list.insert(with_list.end(), bytes.begin() + 12, bytes.end());
  CHECK(wav_decode(with_list).samples == std::vector<double>{0.25, -0.5});
}
