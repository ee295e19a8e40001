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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "specinvert/config.hpp"

namespace specinvert {

/// Half-spectrum of one real frame: num_bins complex values.
using ComplexFrame = std::vector<std::complex<double>>;
/// Time-major sequence of ComplexFrame.
using ComplexSpectrogram = std::vector<ComplexFrame>;

/// Normalized window-squared sums below this value are clamped before
/// dividing the overlap-added signal.
inline constexpr double kOlaFloor = 1e-8;

/// y[0] = x[0], y[n] = x[n] - coef * x[n-1].
std::vector<double> preemphasis(std::span<const double> x, double coef);

/// Streaming inverse of preemphasis followed by the 1/(1 + coef) output
/// normalization. Carries the previous unnormalized output across calls.
class Deemphasis {
 public:
  explicit Deemphasis(double coef);

  std::vector<double> process(std::span<const double> x);
  void reset() { prev_ = 0.0; }
  double coef() const { return coef_; }

 private:
  double coef_;
  double prev_ = 0.0;
};

/// One-shot Deemphasis over a whole sequence.
std::vector<double> deemphasis(std::span<const double> x, double coef);

/// Periodic Hann window, w[n] = 0.5 * (1 - cos(2*pi*n/length)).
std::vector<double> hann_window(std::size_t length);

/// Sum over frames of window^2 for a signal built from `num_frames` frames
/// spaced `frame_step` apart, floored at kOlaFloor.
std::vector<double> ola_normalization(std::span<const double> window,
                                      std::size_t frame_step,
                                      std::size_t num_frames);

/// Number of full frames that fit in `num_samples` samples.
std::size_t frame_count(std::size_t num_samples, const StreamConfig& cfg);

/// Frames start at sample 0 with no centering; a trailing partial frame is
/// dropped.
ComplexSpectrogram batch_stft(std::span<const double> x, const StreamConfig& cfg);

/// Weighted overlap-add inverse. Output length is
/// (frames - 1) * frame_step + frame_size.
std::vector<double> batch_istft(const ComplexSpectrogram& spec,
                                const StreamConfig& cfg);

/// Overlap-add inverse STFT that emits frame_step samples per input frame.
/// The emitted prefix after k pushes equals the first k * frame_step samples
/// of batch_istft over the same frames; flush() returns the remaining
/// frame_size - frame_step samples and resets the state.
class StreamingIstft {
 public:
  /// Uninitialized; push() throws until a configured state is assigned.
  StreamingIstft() = default;
  explicit StreamingIstft(const StreamConfig& cfg);

  std::vector<double> push(std::span<const std::complex<double>> frame);
  std::vector<double> flush();
  void reset();

  bool initialized() const { return !window_.empty(); }
  std::size_t frames_pushed() const { return frames_pushed_; }
  const StreamConfig& config() const { return cfg_; }

  /// Samples that remain pending after each push.
  std::size_t delay_samples() const { return cfg_.frame_size - cfg_.frame_step; }
  std::size_t state_bytes() const;

 private:
  std::vector<double> emit(std::size_t count);

  StreamConfig cfg_;
  std::vector<double> window_;
  std::vector<double> overlap_;
  std::vector<double> norm_;
  std::vector<double> scratch_;
  std::size_t frames_pushed_ = 0;
};

/// Rejects any NaN or infinity with Error(kNonFinite).
void check_finite(std::span<const double> x, const char* what);
void check_finite(std::span<const float> x, const char* what);

}  // namespace specinvert
