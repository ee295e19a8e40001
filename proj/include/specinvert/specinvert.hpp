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

#include "specinvert/bench.hpp"
#include "specinvert/config.hpp"
#include "specinvert/dsp.hpp"
#include "specinvert/errors.hpp"
#include "specinvert/fft.hpp"
#include "specinvert/griffin_lim.hpp"
#include "specinvert/melgan.hpp"
#include "specinvert/metrics.hpp"
#include "specinvert/spectrogram.hpp"
#include "specinvert/wav.hpp"
