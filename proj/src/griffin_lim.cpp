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

#include "specinvert/griffin_lim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "specinvert/errors.hpp"
#include "specinvert/fft.hpp"
#include "specinvert/metrics.hpp"

namespace specinvert {

void GlConfig::validate() const {
  base.validate();
  require(w_size >= 1, "w_size must be at least 1");
  require(ind < w_size, "ind (" + std::to_string(ind) + ") must be smaller than w_size (" +
                            std::to_string(w_size) + ")");
}

GlWindow::GlWindow(std::size_t w_size, std::size_t num_bins)
    : mag(w_size, std::vector<double>(num_bins, 0.0)),
      phase(w_size, std::vector<double>(num_bins, 0.0)) {}

ComplexFrame GlWindow::complex_frame(std::size_t t) const {
  ComplexFrame frame(mag[t].size());
  for (std::size_t k = 0; k < frame.size(); ++k) frame[k] = std::polar(mag[t][k], phase[t][k]);
  return frame;
}

void GlWindow::slide(std::span<const double> new_mag) {
  std::rotate(mag.begin(), mag.begin() + 1, mag.end());
  std::rotate(phase.begin(), phase.begin() + 1, phase.end());
  mag.back().assign(new_mag.begin(), new_mag.end());
  std::fill(phase.back().begin(), phase.back().end(), 0.0);
}

double safe_phase(std::complex<double> z) {
  if (z.real() == 0.0 && z.imag() == 0.0) return 0.0;
  return std::arg(z);
}

void gl_window_iterations(GlWindow& window, std::size_t ind, std::size_t n_iters,
                          const StreamConfig& cfg) {
  const std::size_t w_size = window.size();
  const std::size_t bins = cfg.num_bins();
  require(w_size > 0 && ind < w_size, "gl window: ind must index into the window");
  for (std::size_t t = 0; t < w_size; ++t) {
    require(window.mag[t].size() == bins && window.phase[t].size() == bins,
            "gl window: frame " + std::to_string(t) + " is not " + std::to_string(bins) +
                " bins wide");
  }
  if (n_iters == 0) return;

  const auto& fft = RealFft::cached(cfg.fft_size);
  const auto hann = hann_window(cfg.frame_size);
  const auto norm = ola_normalization(hann, cfg.frame_step, w_size);
  const std::size_t span_len = norm.size();

  std::vector<double> frame_buf(cfg.frame_size);
  ComplexFrame spec(bins);

  // Committed frames never change inside this call, so their share of the
  // overlap-add is computed once.
  std::vector<double> committed(span_len, 0.0);
  auto add_frame = [&](std::size_t t, std::vector<double>& dst) {
    for (std::size_t k = 0; k < bins; ++k) spec[k] = std::polar(window.mag[t][k], window.phase[t][k]);
    fft.inverse(spec, frame_buf);
    double* out = dst.data() + t * cfg.frame_step;
    for (std::size_t n = 0; n < cfg.frame_size; ++n) out[n] += frame_buf[n] * hann[n];
  };
  for (std::size_t t = 0; t < ind; ++t) add_frame(t, committed);

  std::vector<double> local(span_len);
  for (std::size_t iter = 0; iter < n_iters; ++iter) {
    local = committed;
    for (std::size_t t = ind; t < w_size; ++t) add_frame(t, local);
    for (std::size_t n = 0; n < span_len; ++n) local[n] /= norm[n];

    for (std::size_t t = ind; t < w_size; ++t) {
      const double* src = local.data() + t * cfg.frame_step;
      for (std::size_t n = 0; n < cfg.frame_size; ++n) frame_buf[n] = src[n] * hann[n];
      fft.forward(frame_buf, spec);
      auto& phase = window.phase[t];
      for (std::size_t k = 0; k < bins; ++k) phase[k] = safe_phase(spec[k]);
    }
  }
}

GlStreamer::GlStreamer(const GlConfig& cfg)
    : cfg_(cfg),
      window_(cfg.w_size, cfg.base.num_bins()),
      istft_(cfg.base),
      deemph_(cfg.base.preemph_coef) {
  cfg_.validate();
}

std::vector<double> GlStreamer::push(std::span<const float> logmag) {
  require(logmag.size() == cfg_.base.num_bins(),
          "gl push: frame has " + std::to_string(logmag.size()) + " bins, expected " +
              std::to_string(cfg_.base.num_bins()));
  check_finite(logmag, "gl push");
  return push_magnitude(log_expand(logmag, cfg_.base.log_delta));
}

std::vector<double> GlStreamer::push(std::span<const double> logmag) {
  require(logmag.size() == cfg_.base.num_bins(),
          "gl push: frame has " + std::to_string(logmag.size()) + " bins, expected " +
              std::to_string(cfg_.base.num_bins()));
  check_finite(logmag, "gl push");
  return push_magnitude(log_expand(logmag, cfg_.base.log_delta));
}

std::vector<double> GlStreamer::push_magnitude(std::span<const double> mag) {
  require(mag.size() == cfg_.base.num_bins(),
          "gl push: frame has " + std::to_string(mag.size()) + " bins, expected " +
              std::to_string(cfg_.base.num_bins()));
  check_finite(mag, "gl push");
  window_.slide(mag);
  gl_window_iterations(window_, cfg_.ind, cfg_.n_iters, cfg_.base);
  last_output_ = window_.complex_frame(cfg_.ind);
  ++frames_pushed_;
  return deemph_.process(istft_.push(last_output_));
}

std::vector<double> GlStreamer::flush() {
  std::vector<double> tail;
  const std::vector<double> silence(cfg_.base.num_bins(), 0.0);
  for (std::size_t i = 0; i < cfg_.lookahead_frames(); ++i) {
    auto hop = push_magnitude(silence);
    tail.insert(tail.end(), hop.begin(), hop.end());
  }
  auto rest = deemph_.process(istft_.flush());
  tail.insert(tail.end(), rest.begin(), rest.end());
  reset();
  return tail;
}

void GlStreamer::reset() {
  window_ = GlWindow(cfg_.w_size, cfg_.base.num_bins());
  istft_.reset();
  deemph_.reset();
  last_output_.clear();
  frames_pushed_ = 0;
}

std::size_t GlStreamer::state_bytes() const {
  const std::size_t bins = cfg_.base.num_bins();
  // mag_w + phase queue, the output frame, and the local overlap-add span
  // with its normalization used during iterations.
  const std::size_t span_len = (cfg_.w_size - 1) * cfg_.base.frame_step + cfg_.base.frame_size;
  return sizeof(double) * (2 * cfg_.w_size * bins + 2 * bins + 3 * span_len) +
         istft_.state_bytes();
}

namespace {

GlResult run_gl_nonstreaming(const LogMagSpectrogram& spec, std::size_t n_iters,
                             const StreamConfig& base, bool want_trace) {
  const StreamConfig cfg = spec.geometry(base);
  cfg.validate();
  require(spec.num_frames() > 0, "cannot invert an empty spectrogram");
  check_finite(std::span<const float>(spec.values), "gl_nonstreaming");

  const std::size_t frames = spec.num_frames();
  const std::size_t bins = cfg.num_bins();
  const auto target = expand_all(spec, cfg.log_delta);

  ComplexSpectrogram estimate(frames, ComplexFrame(bins));
  for (std::size_t t = 0; t < frames; ++t) {
    for (std::size_t k = 0; k < bins; ++k) estimate[t][k] = target[t * bins + k];
  }

  GlResult result;
  std::vector<double> rebuilt_mag(frames * bins);
  auto measure = [&](const ComplexSpectrogram& consistent) {
    for (std::size_t t = 0; t < frames; ++t) {
      for (std::size_t k = 0; k < bins; ++k) rebuilt_mag[t * bins + k] = std::abs(consistent[t][k]);
    }
    result.convergence_db.push_back(spectral_convergence(target, rebuilt_mag));
  };
  // Spectral convergence is undefined for an all-zero target.
  const bool trace =
      want_trace && std::any_of(target.begin(), target.end(), [](double m) { return m > 0.0; });

  for (std::size_t iter = 0; iter < n_iters; ++iter) {
    const auto signal = batch_istft(estimate, cfg);
    const auto consistent = batch_stft(signal, cfg);
    if (trace) measure(consistent);
    for (std::size_t t = 0; t < frames; ++t) {
      for (std::size_t k = 0; k < bins; ++k) {
        estimate[t][k] = std::polar(target[t * bins + k], safe_phase(consistent[t][k]));
      }
    }
  }
  auto signal = batch_istft(estimate, cfg);
  if (trace) measure(batch_stft(signal, cfg));
  result.samples = deemphasis(signal, cfg.preemph_coef);
  return result;
}

}  // namespace

GlResult gl_nonstreaming_traced(const LogMagSpectrogram& spec, std::size_t n_iters,
                                const StreamConfig& cfg) {
  return run_gl_nonstreaming(spec, n_iters, cfg, true);
}

std::vector<double> gl_nonstreaming(const LogMagSpectrogram& spec, std::size_t n_iters,
                                    const StreamConfig& cfg) {
  return run_gl_nonstreaming(spec, n_iters, cfg, false).samples;
}

}  // namespace specinvert
