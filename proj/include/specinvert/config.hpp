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

namespace specinvert {

/// Analysis/synthesis constants shared by every stage of the pipeline.
/// Defaults: 16 kHz audio, 2048-point FFT, 50 ms Hann frames every 12.5 ms,
/// pre-emphasis 0.97 and log offset 1e-2.
struct StreamConfig {
  std::size_t sample_rate = 16000;
  std::size_t fft_size = 2048;
  std::size_t frame_size = 800;
  std::size_t frame_step = 200;
  double preemph_coef = 0.97;
  double log_delta = 1e-2;

  std::size_t num_bins() const { return fft_size / 2 + 1; }

  /// Throws Error(kInvalidArgument) when the constants cannot drive the
  /// streaming inverse STFT.
  void validate() const;

  double samples_to_ms(std::size_t samples) const {
    return 1000.0 * static_cast<double>(samples) /
           static_cast<double>(sample_rate);
  }
};

}  // namespace specinvert
