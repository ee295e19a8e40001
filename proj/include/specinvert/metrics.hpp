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
#include <utility>

namespace specinvert {

/// Reported in place of -inf / +inf for exact matches.
inline constexpr double kScFloorDb = -300.0;
inline constexpr double kSnrCeilingDb = 300.0;

/// 20*log10(||ref - est||_F / ||ref||_F) over flattened magnitudes.
/// Throws on shape mismatch or an all-zero reference.
double spectral_convergence(std::span<const double> ref_mag, std::span<const double> est_mag);

/// 10*log10(sum ref^2 / sum (ref - est)^2). Throws on length mismatch or an
/// all-zero reference.
double snr(std::span<const double> ref, std::span<const double> est);

/// Drops the first `shift` samples of `est` and truncates both to the common
/// length.
std::pair<std::span<const double>, std::span<const double>> align_for_scoring(
    std::span<const double> ref, std::span<const double> est, std::size_t shift);

}  // namespace specinvert
