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
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "specinvert/config.hpp"
#include "specinvert/griffin_lim.hpp"
#include "specinvert/melgan.hpp"
#include "specinvert/spectrogram.hpp"

namespace specinvert {

/// A vocoder that turns one log-magnitude frame into frame_step samples.
class StreamingVocoder {
 public:
  virtual ~StreamingVocoder() = default;

  virtual std::string name() const = 0;
  virtual const StreamConfig& config() const = 0;
  virtual std::vector<double> push(std::span<const float> logmag) = 0;
  /// Remaining samples after the last frame; resets the stream.
  virtual std::vector<double> flush() = 0;
  virtual void reset() = 0;

  virtual std::size_t lookahead_delay_samples() const = 0;
  virtual std::size_t total_delay_samples() const = 0;
  /// Analytic estimate from buffer and weight sizes.
  virtual std::size_t state_bytes() const = 0;
};

class GlVocoder final : public StreamingVocoder {
 public:
  explicit GlVocoder(const GlConfig& cfg) : gl_(cfg) {}

  std::string name() const override;
  const StreamConfig& config() const override { return gl_.config().base; }
  std::vector<double> push(std::span<const float> logmag) override { return gl_.push(logmag); }
  std::vector<double> flush() override { return gl_.flush(); }
  void reset() override { gl_.reset(); }
  std::size_t lookahead_delay_samples() const override {
    return gl_.config().lookahead_delay_samples();
  }
  std::size_t total_delay_samples() const override { return gl_.config().total_delay_samples(); }
  std::size_t state_bytes() const override { return gl_.state_bytes(); }

 private:
  GlStreamer gl_;
};

/// Causal generator: no lookahead and no inverse-STFT tail.
class MelGanVocoder final : public StreamingVocoder {
 public:
  MelGanVocoder(std::shared_ptr<const melgan::Generator> generator, const StreamConfig& cfg);

  std::string name() const override { return "smelgan0"; }
  const StreamConfig& config() const override { return cfg_; }
  std::vector<double> push(std::span<const float> logmag) override;
  std::vector<double> flush() override;
  void reset() override { state_.reset(); }
  std::size_t lookahead_delay_samples() const override { return 0; }
  std::size_t total_delay_samples() const override { return 0; }
  std::size_t state_bytes() const override;

 private:
  std::shared_ptr<const melgan::Generator> generator_;
  StreamConfig cfg_;
  melgan::GeneratorStreamState state_;
};

/// Copies the first frame_step bins of each frame to the output. A floor
/// for harness overhead.
class NullVocoder final : public StreamingVocoder {
 public:
  explicit NullVocoder(const StreamConfig& cfg) : cfg_(cfg) {}

  std::string name() const override { return "null"; }
  const StreamConfig& config() const override { return cfg_; }
  std::vector<double> push(std::span<const float> logmag) override;
  std::vector<double> flush() override { return {}; }
  void reset() override {}
  std::size_t lookahead_delay_samples() const override { return 0; }
  std::size_t total_delay_samples() const override { return 0; }
  std::size_t state_bytes() const override { return 0; }

 private:
  StreamConfig cfg_;
};

/// Pushes every frame and, if requested, appends the flushed tail.
std::vector<double> run_stream(StreamingVocoder& vocoder, const LogMagSpectrogram& spec,
                               bool flush = true);

struct BenchReport {
  std::string vocoder;
  std::size_t warmup_hops = 0;
  std::size_t hops = 0;
  std::size_t lookahead_delay_samples = 0;
  std::size_t total_delay_samples = 0;
  double lookahead_delay_ms = 0.0;
  double total_delay_ms = 0.0;
  double latency_mean_ms = 0.0;
  double latency_median_ms = 0.0;
  double latency_p95_ms = 0.0;
  double latency_sum_ms = 0.0;
  double wall_ms = 0.0;
  double rtf = 0.0;
  std::size_t state_bytes = 0;

  /// One "key=value" per line, in declaration order.
  std::string to_key_value() const;
  /// Single JSON object with the same keys.
  std::string to_json() const;
};

/// Single-threaded. Times each push after the first `warmup_hops` frames
/// (clamped so that at least one hop is timed).
BenchReport run_bench(StreamingVocoder& vocoder, const LogMagSpectrogram& spec,
                      std::size_t warmup_hops);

}  // namespace specinvert
