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

// specinvert: analyze audio into log-magnitude spectrograms, invert them
// with Griffin-Lim or a causal MelGAN generator, benchmark streaming
// vocoders and compare reconstructions.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "specinvert/specinvert.hpp"

namespace si = specinvert;

namespace {

struct AnalysisFlags {
  std::size_t fft_size = 2048;
  std::size_t frame_size = 800;
  std::size_t frame_step = 200;
  double preemph = 0.97;
  double log_delta = 1e-2;

  void add(CLI::App* cmd, bool geometry) {
    if (geometry) {
      cmd->add_option("--fft-size", fft_size, "FFT size")->capture_default_str();
      cmd->add_option("--frame-size", frame_size, "Frame length in samples")->capture_default_str();
      cmd->add_option("--frame-step", frame_step, "Hop length in samples")->capture_default_str();
    }
    cmd->add_option("--preemph", preemph, "Pre-emphasis coefficient")->capture_default_str();
    cmd->add_option("--log-delta", log_delta, "Offset inside the log compression")
        ->capture_default_str();
  }

  si::StreamConfig config() const {
    si::StreamConfig cfg;
    cfg.fft_size = fft_size;
    cfg.frame_size = frame_size;
    cfg.frame_step = frame_step;
    cfg.preemph_coef = preemph;
    cfg.log_delta = log_delta;
    return cfg;
  }
};

struct VocoderFlags {
  std::string vocoder = "sgl";
  std::optional<std::size_t> iters;
  std::size_t wsize = 4;
  std::size_t ind = 2;
  std::string weights;

  void add(CLI::App* cmd, std::vector<std::string> choices) {
    cmd->add_option("--vocoder", vocoder, "Vocoder")
        ->check(CLI::IsMember(choices))
        ->capture_default_str();
    cmd->add_option("--iters", iters, "Griffin-Lim iterations (ngl: 70, sgl: 4 per frame)");
    cmd->add_option("--wsize", wsize, "Streaming GL window size in frames")->capture_default_str();
    cmd->add_option("--ind", ind, "Streaming GL output index inside the window")
        ->capture_default_str();
    cmd->add_option("--weights", weights, "Generator weights (.gwt), required for melgan");
  }

  si::GlConfig gl(const si::StreamConfig& base) const {
    si::GlConfig cfg;
    cfg.w_size = wsize;
    cfg.ind = ind;
    cfg.n_iters = iters.value_or(4);
    cfg.base = base;
    cfg.validate();
    return cfg;
  }

  std::shared_ptr<const si::melgan::Generator> generator(const si::StreamConfig& base) const {
    if (weights.empty()) {
      throw si::Error(si::ErrorCode::kInvalidArgument, "--vocoder melgan requires --weights");
    }
    si::melgan::GeneratorArch arch;
    arch.in_channels = base.num_bins();
    arch.frame_step = base.frame_step;
    auto gen = std::make_shared<si::melgan::Generator>(arch);
    gen->load(si::melgan::load_weights(weights, arch));
    return gen;
  }

  std::unique_ptr<si::StreamingVocoder> streaming(const si::StreamConfig& base) const {
    if (vocoder == "sgl") return std::make_unique<si::GlVocoder>(gl(base));
    if (vocoder == "melgan") return std::make_unique<si::MelGanVocoder>(generator(base), base);
    if (vocoder == "null") return std::make_unique<si::NullVocoder>(base);
    throw si::Error(si::ErrorCode::kInvalidArgument,
                    "vocoder " + vocoder + " does not run in streaming mode");
  }
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  if (!out) throw si::Error(si::ErrorCode::kIo, "cannot write " + path);
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SPECINVERT_SEED")) return std::stoull(env);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Real-time magnitude spectrogram inversion toolkit", "specinvert"};
  app.require_subcommand(1);

  AnalysisFlags analysis;
  std::string in_path;
  std::string out_path;
  auto* analyze_cmd = app.add_subcommand("analyze", "WAV -> log-magnitude spectrogram (.lms)");
  analyze_cmd->add_option("input", in_path, "16 kHz mono PCM16 WAV")->required();
  analyze_cmd->add_option("output", out_path, "Spectrogram file")->required();
  analysis.add(analyze_cmd, true);

  VocoderFlags voc;
  AnalysisFlags invert_analysis;
  auto* invert_cmd = app.add_subcommand("invert", "Spectrogram (.lms) -> WAV");
  invert_cmd->add_option("input", in_path, "Spectrogram file")->required();
  invert_cmd->add_option("output", out_path, "Output WAV")->required();
  voc.add(invert_cmd, {"ngl", "sgl", "melgan"});
  invert_analysis.add(invert_cmd, false);

  VocoderFlags bench_voc;
  AnalysisFlags bench_analysis;
  std::size_t warmup = 10;
  std::string report_path;
  std::string json_path;
  auto* bench_cmd = app.add_subcommand("bench", "Per-hop latency, real-time factor and delays");
  bench_cmd->add_option("input", in_path, "Spectrogram file")->required();
  bench_voc.add(bench_cmd, {"sgl", "melgan", "null"});
  bench_analysis.add(bench_cmd, false);
  bench_cmd->add_option("--warmup", warmup, "Untimed leading hops")->capture_default_str();
  bench_cmd->add_option("--report", report_path, "Write key=value report here");
  bench_cmd->add_option("--json", json_path, "Write JSON report here");

  std::string ref_path;
  std::string est_path;
  std::size_t shift = 0;
  double gain = 1.0;
  AnalysisFlags compare_analysis;
  auto* compare_cmd = app.add_subcommand("compare", "Spectral convergence and SNR of two WAVs");
  compare_cmd->add_option("reference", ref_path, "Reference WAV")->required();
  compare_cmd->add_option("estimate", est_path, "Estimated WAV")->required();
  compare_cmd->add_option("--shift", shift, "Drop this many leading estimate samples")
      ->capture_default_str();
  compare_cmd->add_option("--gain", gain, "Scale the estimate before scoring")
      ->capture_default_str();
  compare_analysis.add(compare_cmd, true);

  std::optional<std::uint64_t> seed;
  auto* init_cmd = app.add_subcommand("init-weights", "Write seeded random generator weights");
  init_cmd->add_option("output", out_path, "Weights file (.gwt)")->required();
  init_cmd->add_option("--seed", seed, "Seed (default: $SPECINVERT_SEED or 0)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze_cmd) {
      const auto cfg = analysis.config();
      const auto clip = si::wav_read(in_path, static_cast<std::uint32_t>(cfg.sample_rate));
      const auto spec = si::analyze(clip.samples, cfg);
      si::save_spectrogram(spec, out_path);
      std::cout << "frames=" << spec.num_frames() << " bins=" << spec.num_bins << '\n';
    } else if (*invert_cmd) {
      const auto spec = si::load_spectrogram(in_path);
      const auto cfg = spec.geometry(invert_analysis.config());
      std::vector<double> samples;
      if (voc.vocoder == "ngl") {
        samples = si::gl_nonstreaming(spec, voc.iters.value_or(70), cfg);
      } else {
        auto vocoder = voc.streaming(cfg);
        samples = si::run_stream(*vocoder, spec);
      }
      si::wav_write(out_path, {std::move(samples), static_cast<std::uint32_t>(cfg.sample_rate)});
    } else if (*bench_cmd) {
      const auto spec = si::load_spectrogram(in_path);
      const auto cfg = spec.geometry(bench_analysis.config());
      auto vocoder = bench_voc.streaming(cfg);
      const auto report = si::run_bench(*vocoder, spec, warmup);
      std::cout << report.to_key_value();
      if (!report_path.empty()) write_text(report_path, report.to_key_value());
      if (!json_path.empty()) write_text(json_path, report.to_json());
    } else if (*compare_cmd) {
      const auto cfg = compare_analysis.config();
      const auto rate = static_cast<std::uint32_t>(cfg.sample_rate);
      const auto ref = si::wav_read(ref_path, rate);
      auto est = si::wav_read(est_path, rate);
      for (double& v : est.samples) v *= gain;
      const auto [r, e] = si::align_for_scoring(ref.samples, est.samples, shift);
      if (r.size() < cfg.frame_size) {
        throw si::Error(si::ErrorCode::kInvalidArgument,
                        "aligned clips are shorter than one analysis frame");
      }
      const auto ref_mag = si::expand_all(si::analyze(r, cfg), cfg.log_delta);
      const auto est_mag = si::expand_all(si::analyze(e, cfg), cfg.log_delta);
      std::cout << "spectral_convergence_db=" << si::spectral_convergence(ref_mag, est_mag) << '\n'
                << "snr_db=" << si::snr(r, e) << '\n';
    } else if (*init_cmd) {
      const si::melgan::GeneratorArch arch;
      si::melgan::save_weights(si::melgan::random_weights(arch, seed.value_or(default_seed())),
                               out_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "specinvert: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
