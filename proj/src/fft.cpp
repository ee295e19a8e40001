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

#include "specinvert/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <string>

#include "specinvert/errors.hpp"

namespace specinvert {
namespace {

// The FFTW planner is not reentrant; execution on distinct buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct RealFft::Impl {
  double* real = nullptr;
  fftw_complex* spec = nullptr;
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;

  ~Impl() {
    std::lock_guard lock(planner_mutex());
    if (r2c) fftw_destroy_plan(r2c);
    if (c2r) fftw_destroy_plan(c2r);
    fftw_free(real);
    fftw_free(spec);
  }
};

RealFft::RealFft(std::size_t size) : size_(size), impl_(std::make_unique<Impl>()) {
  require(size >= 2 && size % 2 == 0,
          "fft size must be even and >= 2, got " + std::to_string(size));
  const int n = static_cast<int>(size);
  impl_->real = fftw_alloc_real(size);
  impl_->spec = fftw_alloc_complex(size / 2 + 1);
  std::lock_guard lock(planner_mutex());
  impl_->r2c = fftw_plan_dft_r2c_1d(n, impl_->real, impl_->spec, FFTW_ESTIMATE);
  impl_->c2r = fftw_plan_dft_c2r_1d(n, impl_->spec, impl_->real, FFTW_ESTIMATE);
  if (!impl_->r2c || !impl_->c2r) {
    fail(ErrorCode::kInvalidArgument, "FFTW planning failed for size " + std::to_string(size));
  }
}

RealFft::~RealFft() = default;
RealFft::RealFft(RealFft&&) noexcept = default;
RealFft& RealFft::operator=(RealFft&&) noexcept = default;

void RealFft::forward(std::span<const double> in,
                      std::span<std::complex<double>> out) const {
  require(in.size() <= size_, "forward FFT input longer than transform size");
  require(out.size() == num_bins(), "forward FFT output must hold size/2+1 bins");
  std::copy(in.begin(), in.end(), impl_->real);
  std::fill(impl_->real + in.size(), impl_->real + size_, 0.0);
  fftw_execute(impl_->r2c);
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = {impl_->spec[k][0], impl_->spec[k][1]};
  }
}

void RealFft::inverse(std::span<const std::complex<double>> in,
                      std::span<double> out) const {
  require(in.size() == num_bins(), "inverse FFT input must hold size/2+1 bins");
  require(out.size() <= size_, "inverse FFT output longer than transform size");
  for (std::size_t k = 0; k < in.size(); ++k) {
    impl_->spec[k][0] = in[k].real();
    impl_->spec[k][1] = in[k].imag();
  }
  impl_->spec[0][1] = 0.0;
  impl_->spec[in.size() - 1][1] = 0.0;
  fftw_execute(impl_->c2r);
  const double scale = 1.0 / static_cast<double>(size_);
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = impl_->real[n] * scale;
}

const RealFft& RealFft::cached(std::size_t size) {
  thread_local std::map<std::size_t, RealFft> cache;
  auto it = cache.find(size);
  if (it == cache.end()) it = cache.emplace(size, RealFft(size)).first;
  return it->second;
}

}  // namespace specinvert
