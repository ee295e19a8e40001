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

#include "specinvert/config.hpp"

#include <cmath>
#include <string>

#include "specinvert/errors.hpp"

namespace specinvert {

void StreamConfig::validate() const {
  require(sample_rate > 0, "sample_rate must be positive");
  require(frame_step > 0, "frame_step must be positive");
  require(frame_step <= frame_size,
          "frame_step (" + std::to_string(frame_step) +
              ") must not exceed frame_size (" + std::to_string(frame_size) +
              ")");
  require(frame_size <= fft_size,
          "frame_size (" + std::to_string(frame_size) +
              ") must not exceed fft_size (" + std::to_string(fft_size) + ")");
  require(fft_size >= 2 && fft_size % 2 == 0, "fft_size must be even and >= 2");
  require(frame_size >= 2, "frame_size must be at least 2");
  require(frame_size % frame_step == 0,
          "frame_size must be an integer multiple of frame_step");
  require(std::isfinite(preemph_coef) && preemph_coef >= 0.0 &&
              preemph_coef < 1.0,
          "preemph_coef must lie in [0, 1)");
  require(std::isfinite(log_delta) && log_delta > 0.0,
          "log_delta must be positive");
}

}  // namespace specinvert
