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
#include <span>
#include <vector>

#include "specinvert/config.hpp"
#include "specinvert/dsp.hpp"
#include "specinvert/spectrogram.hpp"

namespace specinvert {

/// Sliding-window Griffin-Lim parameters. Defaults give a four-frame window
/// with two committed frames, one output frame and one frame of lookahead.
struct GlConfig {
  std::size_t w_size = 4;
  std::size_t n_iters = 4;
  std::size_t ind = 2;
  StreamConfig base;

  void validate() const;

  std::size_t lookahead_frames() const { return w_size - 1 - ind; }
  std::size_t lookahead_delay_samples() const { return lookahead_frames() * base.frame_step; }
  std::size_t istft_delay_samples() const { return base.frame_size - base.frame_step; }
  std::size_t total_delay_samples() const {
    return lookahead_delay_samples() + istft_delay_samples();
  }
};

/// The sliding queues in polar form: stft_w[t][k] = mag[t][k] * exp(i*phase[t][k]).
/// Keeping the magnitude as its own array makes |stft_w| == mag_w hold by
/// construction.
struct GlWindow {
  std::vector<std::vector<double>> mag;
  std::vector<std::vector<double>> phase;

  GlWindow() = default;
  GlWindow(std::size_t w_size, std::size_t num_bins);

  std::size_t size() const { return mag.size(); }
  ComplexFrame complex_frame(std::size_t t) const;
  /// Drops the oldest frame and appends `new_mag` with zero phase.
  void slide(std::span<const double> new_mag);
};

/// Phase of a complex value, with arg(0) defined as 0.
double safe_phase(std::complex<double> z);

/// Runs n_iters local Griffin-Lim iterations over the window. Frames at
/// positions < ind keep their phase bit for bit; the others take the phase
/// of the re-analysed local waveform. Magnitudes are never touched.
void gl_window_iterations(GlWindow& window, std::size_t ind, std::size_t n_iters,
                          const StreamConfig& cfg);

/// Streaming Griffin-Lim: one log-magnitude frame in, frame_step samples out.
class GlStreamer {
 public:
  explicit GlStreamer(const GlConfig& cfg);

  /// Expands a log-magnitude frame and runs one streaming step.
  std::vector<double> push(std::span<const float> logmag);
  std::vector<double> push(std::span<const double> logmag);
  /// Same step for a frame that is already linear magnitude.
  std::vector<double> push_magnitude(std::span<const double> mag);
  /// Drains the lookahead with silent frames, then the inverse STFT tail.
  std::vector<double> flush();
  void reset();

  const GlConfig& config() const { return cfg_; }
  const GlWindow& window() const { return window_; }
  std::size_t frames_pushed() const { return frames_pushed_; }
  /// Complex frame handed to the inverse STFT by the last push.
  const ComplexFrame& last_output_frame() const { return last_output_; }
  std::size_t state_bytes() const;

 private:
  GlConfig cfg_;
  GlWindow window_;
  StreamingIstft istft_;
  Deemphasis deemph_;
  ComplexFrame last_output_;
  std::size_t frames_pushed_ = 0;
};

struct GlResult {
  std::vector<double> samples;
  /// Spectral convergence (dB) of the consistent projection of each
  /// iterate: entry i is measured before update i, the last entry describes
  /// the returned signal. Empty unless tracing was requested.
  std::vector<double> convergence_db;
};

/// Whole-sequence Griffin-Lim from zero phase.
std::vector<double> gl_nonstreaming(const LogMagSpectrogram& spec, std::size_t n_iters,
                                    const StreamConfig& cfg = {});
GlResult gl_nonstreaming_traced(const LogMagSpectrogram& spec, std::size_t n_iters,
                                const StreamConfig& cfg = {});

}  // namespace specinvert
