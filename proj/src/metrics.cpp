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

#include "specinvert/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "specinvert/errors.hpp"

namespace specinvert {

double spectral_convergence(std::span<const double> ref_mag, std::span<const double> est_mag) {
  require(ref_mag.size() == est_mag.size(),
          "spectral_convergence: shape mismatch (" + std::to_string(ref_mag.size()) + " vs " +
              std::to_string(est_mag.size()) + " values)");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < ref_mag.size(); ++i) {
    const double d = ref_mag[i] - est_mag[i];
    num += d * d;
    den += ref_mag[i] * ref_mag[i];
  }
  require(den > 0.0, "spectral_convergence: reference is all zero");
  if (num == 0.0) return kScFloorDb;
  return std::max(10.0 * std::log10(num / den), kScFloorDb);
}

double snr(std::span<const double> ref, std::span<const double> est) {
  require(ref.size() == est.size(), "snr: length mismatch (" + std::to_string(ref.size()) +
                                        " vs " + std::to_string(est.size()) + " samples)");
  double signal = 0.0;
  double noise = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    const double d = ref[i] - est[i];
    signal += ref[i] * ref[i];
    noise += d * d;
  }
  require(signal > 0.0, "snr: reference is all zero");
  if (noise == 0.0) return kSnrCeilingDb;
  return std::min(10.0 * std::log10(signal / noise), kSnrCeilingDb);
}

std::pair<std::span<const double>, std::span<const double>> align_for_scoring(
    std::span<const double> ref, std::span<const double> est, std::size_t shift) {
  est = est.subspan(std::min(shift, est.size()));
  const std::size_t n = std::min(ref.size(), est.size());
  return {ref.first(n), est.first(n)};
}

}  // namespace specinvert
