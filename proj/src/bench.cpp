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

#include "specinvert/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <json.hpp>
#include <sstream>

#include "specinvert/errors.hpp"

namespace specinvert {

std::string GlVocoder::name() const {
  const auto& c = gl_.config();
  return "sgl" + std::to_string(c.lookahead_frames()) + "(w_size=" + std::to_string(c.w_size) +
         ",n_iters=" + std::to_string(c.n_iters) + ",ind=" + std::to_string(c.ind) + ")";
}

MelGanVocoder::MelGanVocoder(std::shared_ptr<const melgan::Generator> generator,
                             const StreamConfig& cfg)
    : generator_(std::move(generator)), cfg_(cfg) {
  require(generator_ != nullptr, "melgan vocoder needs a generator");
  require(generator_->arch().frame_step == cfg_.frame_step,
          "generator upsampling does not match frame_step");
  require(generator_->arch().in_channels == cfg_.num_bins(),
          "generator input width does not match num_bins");
  state_ = generator_->make_state();
}

std::vector<double> MelGanVocoder::push(std::span<const float> logmag) {
  const auto out = generator_->push(state_, logmag);
  return {out.begin(), out.end()};
}

std::vector<double> MelGanVocoder::flush() {
  state_.reset();
  return {};
}

std::size_t MelGanVocoder::state_bytes() const {
  return generator_->weight_bytes() + state_.bytes();
}

std::vector<double> NullVocoder::push(std::span<const float> logmag) {
  require(logmag.size() >= cfg_.frame_step, "null vocoder: frame narrower than frame_step");
  return {logmag.begin(), logmag.begin() + static_cast<std::ptrdiff_t>(cfg_.frame_step)};
}

std::vector<double> run_stream(StreamingVocoder& vocoder, const LogMagSpectrogram& spec,
                               bool flush) {
  std::vector<double> out;
  out.reserve((spec.num_frames() + 4) * vocoder.config().frame_step + vocoder.config().frame_size);
  for (std::size_t t = 0; t < spec.num_frames(); ++t) {
    const auto hop = vocoder.push(spec.frame(t));
    out.insert(out.end(), hop.begin(), hop.end());
  }
  if (flush) {
    const auto tail = vocoder.flush();
    out.insert(out.end(), tail.begin(), tail.end());
  }
  return out;
}

std::string BenchReport::to_key_value() const {
  std::ostringstream os;
  os.precision(10);
  os << "vocoder=" << vocoder << '\n'
     << "warmup_hops=" << warmup_hops << '\n'
     << "hops=" << hops << '\n'
     << "lookahead_delay_samples=" << lookahead_delay_samples << '\n'
     << "total_delay_samples=" << total_delay_samples << '\n'
     << "lookahead_delay_ms=" << lookahead_delay_ms << '\n'
     << "total_delay_ms=" << total_delay_ms << '\n'
     << "latency_mean_ms=" << latency_mean_ms << '\n'
     << "latency_median_ms=" << latency_median_ms << '\n'
     << "latency_p95_ms=" << latency_p95_ms << '\n'
     << "latency_sum_ms=" << latency_sum_ms << '\n'
     << "wall_ms=" << wall_ms << '\n'
     << "rtf=" << rtf << '\n'
     << "state_bytes=" << state_bytes << '\n';
  return os.str();
}

std::string BenchReport::to_json() const {
  nlohmann::ordered_json j;
  j["vocoder"] = vocoder;
  j["warmup_hops"] = warmup_hops;
  j["hops"] = hops;
  j["lookahead_delay_samples"] = lookahead_delay_samples;
  j["total_delay_samples"] = total_delay_samples;
  j["lookahead_delay_ms"] = lookahead_delay_ms;
  j["total_delay_ms"] = total_delay_ms;
  j["latency_mean_ms"] = latency_mean_ms;
  j["latency_median_ms"] = latency_median_ms;
  j["latency_p95_ms"] = latency_p95_ms;
  j["latency_sum_ms"] = latency_sum_ms;
  j["wall_ms"] = wall_ms;
  j["rtf"] = rtf;
  j["state_bytes"] = state_bytes;
  return j.dump(2) + "\n";
}

BenchReport run_bench(StreamingVocoder& vocoder, const LogMagSpectrogram& spec,
                      std::size_t warmup_hops) {
  using Clock = std::chrono::steady_clock;
  const std::size_t frames = spec.num_frames();
  require(frames > 0, "bench: spectrogram has no frames");
  const auto& cfg = vocoder.config();
  require(spec.num_bins == cfg.num_bins(), "bench: spectrogram width does not match the vocoder");

  BenchReport report;
  report.vocoder = vocoder.name();
  report.warmup_hops = std::min(warmup_hops, frames - 1);
  report.hops = frames - report.warmup_hops;
  report.lookahead_delay_samples = vocoder.lookahead_delay_samples();
  report.total_delay_samples = vocoder.total_delay_samples();
  report.lookahead_delay_ms = cfg.samples_to_ms(report.lookahead_delay_samples);
  report.total_delay_ms = cfg.samples_to_ms(report.total_delay_samples);
  report.state_bytes = vocoder.state_bytes();

  vocoder.reset();
  for (std::size_t t = 0; t < report.warmup_hops; ++t) vocoder.push(spec.frame(t));

  std::vector<double> latencies;
  latencies.reserve(report.hops);
  const auto start = Clock::now();
  for (std::size_t t = report.warmup_hops; t < frames; ++t) {
    const auto before = Clock::now();
    const auto hop = vocoder.push(spec.frame(t));
    const auto after = Clock::now();
    latencies.push_back(std::chrono::duration<double, std::milli>(after - before).count());
    (void)hop;
  }
  const auto stop = Clock::now();
  vocoder.reset();

  report.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  for (double l : latencies) report.latency_sum_ms += l;
  report.latency_mean_ms = report.latency_sum_ms / static_cast<double>(latencies.size());
  std::sort(latencies.begin(), latencies.end());
  const std::size_t n = latencies.size();
  report.latency_median_ms =
      n % 2 ? latencies[n / 2] : 0.5 * (latencies[n / 2 - 1] + latencies[n / 2]);
  const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(n)));
  report.latency_p95_ms = latencies[std::max<std::size_t>(rank, 1) - 1];
  const double audio_s = static_cast<double>(report.hops * cfg.frame_step) /
                         static_cast<double>(cfg.sample_rate);
  report.rtf = report.wall_ms > 0.0 ? audio_s / (report.wall_ms / 1000.0)
                                    : std::numeric_limits<double>::infinity();
  return report;
}

}  // namespace specinvert
