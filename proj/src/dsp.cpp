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

#include "specinvert/dsp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "specinvert/errors.hpp"
#include "specinvert/fft.hpp"

namespace specinvert {
namespace {

void check_coef(double coef) {
  require(std::isfinite(coef) && coef >= 0.0 && coef < 1.0,
          "emphasis coefficient must lie in [0, 1)");
}

template <typename T>
void check_finite_impl(std::span<const T> x, const char* what) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) {
      fail(ErrorCode::kNonFinite, std::string(what) + ": non-finite value at index " +
                                      std::to_string(i));
    }
  }
}

}  // namespace

void check_finite(std::span<const double> x, const char* what) {
  check_finite_impl(x, what);
}

void check_finite(std::span<const float> x, const char* what) {
  check_finite_impl(x, what);
}

std::vector<double> preemphasis(std::span<const double> x, double coef) {
  check_coef(coef);
  check_finite(x, "preemphasis");
  std::vector<double> y(x.size());
  if (x.empty()) return y;
  y[0] = x[0];
  for (std::size_t n = 1; n < x.size(); ++n) y[n] = x[n] - coef * x[n - 1];
  return y;
}

Deemphasis::Deemphasis(double coef) : coef_(coef) { check_coef(coef); }

std::vector<double> Deemphasis::process(std::span<const double> x) {
  check_finite(x, "deemphasis");
  std::vector<double> y(x.size());
  const double norm = 1.0 + coef_;
  for (std::size_t n = 0; n < x.size(); ++n) {
    prev_ = x[n] + coef_ * prev_;
    y[n] = prev_ / norm;
  }
  return y;
}

std::vector<double> deemphasis(std::span<const double> x, double coef) {
  Deemphasis filter(coef);
  return filter.process(x);
}

std::vector<double> hann_window(std::size_t length) {
  require(length >= 2, "window length must be at least 2");
  std::vector<double> w(length);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(length);
  for (std::size_t n = 0; n < length; ++n) {
    w[n] = 0.5 * (1.0 - std::cos(step * static_cast<double>(n)));
  }
  return w;
}

std::vector<double> ola_normalization(std::span<const double> window,
                                      std::size_t frame_step,
                                      std::size_t num_frames) {
  if (num_frames == 0) return {};
  std::vector<double> norm((num_frames - 1) * frame_step + window.size(), 0.0);
  for (std::size_t t = 0; t < num_frames; ++t) {
    double* dst = norm.data() + t * frame_step;
    for (std::size_t n = 0; n < window.size(); ++n) dst[n] += window[n] * window[n];
  }
  for (double& v : norm) v = std::max(v, kOlaFloor);
  return norm;
}

std::size_t frame_count(std::size_t num_samples, const StreamConfig& cfg) {
  if (num_samples < cfg.frame_size) return 0;
  return (num_samples - cfg.frame_size) / cfg.frame_step + 1;
}

ComplexSpectrogram batch_stft(std::span<const double> x, const StreamConfig& cfg) {
  cfg.validate();
  require(x.size() >= cfg.frame_size,
          "stft input has " + std::to_string(x.size()) +
              " samples, shorter than one frame (" +
              std::to_string(cfg.frame_size) + ")");
  const auto window = hann_window(cfg.frame_size);
  const auto& fft = RealFft::cached(cfg.fft_size);
  const std::size_t frames = frame_count(x.size(), cfg);
  ComplexSpectrogram spec(frames, ComplexFrame(cfg.num_bins()));
  std::vector<double> buf(cfg.frame_size);
  for (std::size_t t = 0; t < frames; ++t) {
    const double* src = x.data() + t * cfg.frame_step;
    for (std::size_t n = 0; n < cfg.frame_size; ++n) buf[n] = src[n] * window[n];
    fft.forward(buf, spec[t]);
  }
  return spec;
}

std::vector<double> batch_istft(const ComplexSpectrogram& spec,
                                const StreamConfig& cfg) {
  cfg.validate();
  require(!spec.empty(), "cannot invert an empty spectrogram");
  const auto window = hann_window(cfg.frame_size);
  const auto& fft = RealFft::cached(cfg.fft_size);
  const std::size_t length = (spec.size() - 1) * cfg.frame_step + cfg.frame_size;
  std::vector<double> out(length, 0.0);
  std::vector<double> norm(length, 0.0);
  std::vector<double> buf(cfg.frame_size);
  for (std::size_t t = 0; t < spec.size(); ++t) {
    require(spec[t].size() == cfg.num_bins(),
            "frame " + std::to_string(t) + " has " + std::to_string(spec[t].size()) +
                " bins, expected " + std::to_string(cfg.num_bins()));
    fft.inverse(spec[t], buf);
    const std::size_t offset = t * cfg.frame_step;
    for (std::size_t n = 0; n < cfg.frame_size; ++n) {
      out[offset + n] += buf[n] * window[n];
      norm[offset + n] += window[n] * window[n];
    }
  }
  for (std::size_t n = 0; n < length; ++n) out[n] /= std::max(norm[n], kOlaFloor);
  return out;
}

StreamingIstft::StreamingIstft(const StreamConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  window_ = hann_window(cfg_.frame_size);
  overlap_.assign(cfg_.frame_size, 0.0);
  norm_.assign(cfg_.frame_size, 0.0);
  scratch_.assign(cfg_.frame_size, 0.0);
}

std::vector<double> StreamingIstft::push(std::span<const std::complex<double>> frame) {
  if (!initialized()) {
    fail(ErrorCode::kInvalidArgument, "streaming istft used before initialization");
  }
  require(frame.size() == cfg_.num_bins(),
          "streaming istft frame has " + std::to_string(frame.size()) +
              " bins, expected " + std::to_string(cfg_.num_bins()));
  RealFft::cached(cfg_.fft_size).inverse(frame, scratch_);
  for (std::size_t n = 0; n < cfg_.frame_size; ++n) {
    overlap_[n] += scratch_[n] * window_[n];
    norm_[n] += window_[n] * window_[n];
  }
  ++frames_pushed_;
  return emit(cfg_.frame_step);
}

std::vector<double> StreamingIstft::flush() {
  if (!initialized()) {
    fail(ErrorCode::kInvalidArgument, "streaming istft used before initialization");
  }
  auto tail = emit(cfg_.frame_size - cfg_.frame_step);
  reset();
  return tail;
}

void StreamingIstft::reset() {
  std::fill(overlap_.begin(), overlap_.end(), 0.0);
  std::fill(norm_.begin(), norm_.end(), 0.0);
  frames_pushed_ = 0;
}

std::vector<double> StreamingIstft::emit(std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t n = 0; n < count; ++n) {
    out[n] = overlap_[n] / std::max(norm_[n], kOlaFloor);
  }
  std::shift_left(overlap_.begin(), overlap_.end(), static_cast<std::ptrdiff_t>(count));
  std::shift_left(norm_.begin(), norm_.end(), static_cast<std::ptrdiff_t>(count));
  std::fill(overlap_.end() - static_cast<std::ptrdiff_t>(count), overlap_.end(), 0.0);
  std::fill(norm_.end() - static_cast<std::ptrdiff_t>(count), norm_.end(), 0.0);
  return out;
}

std::size_t StreamingIstft::state_bytes() const {
  return sizeof(double) * (window_.size() + overlap_.size() + norm_.size() + scratch_.size());
}

}  // namespace specinvert
