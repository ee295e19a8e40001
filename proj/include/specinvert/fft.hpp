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
#include <memory>
#include <span>

namespace specinvert {

/// Real-input FFT of a fixed size backed by FFTW. Forward maps `size` real
/// samples to `size/2 + 1` bins; inverse maps back and applies the 1/size
/// scaling so inverse(forward(x)) == x.
///
/// An instance owns scratch buffers and must not be used from two threads at
/// once. `RealFft::cached(size)` hands out one instance per thread.
class RealFft {
 public:
  explicit RealFft(std::size_t size);
  ~RealFft();
  RealFft(RealFft&&) noexcept;
  RealFft& operator=(RealFft&&) noexcept;
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const { return size_; }
  std::size_t num_bins() const { return size_ / 2 + 1; }

  /// `in` may be shorter than size(); the remainder is zero-padded.
  void forward(std::span<const double> in,
               std::span<std::complex<double>> out) const;

  /// Writes the first out.size() (<= size()) samples of the inverse.
  /// Imaginary parts of the DC and Nyquist bins are ignored.
  void inverse(std::span<const std::complex<double>> in,
               std::span<double> out) const;

  static const RealFft& cached(std::size_t size);

 private:
  struct Impl;
  std::size_t size_ = 0;
  std::unique_ptr<Impl> impl_;
};

}  // namespace specinvert
