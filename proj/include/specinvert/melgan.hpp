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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "specinvert/spectrogram.hpp"

namespace specinvert::melgan {

struct UpscaleSpec {
  std::size_t channels;
  std::size_t kernel_size;
  std::size_t stride;
};

/// Causal MelGAN generator topology:
///   conv(in_conv_channels, in_kernel)
///   -> per upscale: elu, transposed conv(channels, kernel_size, stride),
///      one residual block per dilation
///   -> elu -> conv(1, out_kernel).
/// Residual block: x + conv1x1(conv_dilated(elu(x))).
struct GeneratorArch {
  std::size_t in_channels = 1025;
  std::size_t in_conv_channels = 512;
  std::size_t in_kernel = 7;
  std::vector<UpscaleSpec> upscales = {{256, 10, 5}, {128, 10, 5}, {64, 8, 4}, {32, 4, 2}};
  std::vector<std::size_t> dilations = {1, 3, 9};
  std::size_t res_kernel = 3;
  std::size_t out_kernel = 7;
  std::size_t frame_step = 200;

  void validate() const;
  std::size_t upsampling_factor() const;
  /// Sum of kernel and bias sizes over every layer.
  std::size_t parameter_count() const;
};

struct TensorSpec {
  std::string name;
  std::vector<std::uint32_t> dims;
};

/// Canonical tensor names and shapes, in file order. Kernel layouts:
/// conv [out, in, k], transposed conv [in, out, k], bias [out].
/// Names: in_conv.{kernel,bias}, up<i>.tconv.{kernel,bias},
/// up<i>.res<j>.conv_dil.{kernel,bias}, up<i>.res<j>.conv_pw.{kernel,bias},
/// out_conv.{kernel,bias}.
std::vector<TensorSpec> tensor_specs(const GeneratorArch& arch);

struct Tensor {
  std::vector<std::uint32_t> dims;
  std::vector<float> values;
};

using WeightSet = std::map<std::string, Tensor>;

/// Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) for every tensor, from a
/// platform-independent generator.
WeightSet random_weights(const GeneratorArch& arch, std::uint64_t seed);
WeightSet zero_weights(const GeneratorArch& arch);

/// kUnknownTensor, kMissingTensor or kShapeMismatch naming the tensor.
void validate_weights(const WeightSet& weights, const GeneratorArch& arch);

/// ".gwt": "GWT1", u32 version=1, u32 tensor_count, then per tensor
/// u16 name_len, name bytes, u8 rank, rank x u32 dims, binary32 values.
/// All little-endian.
std::vector<char> encode_weights(const WeightSet& weights);
WeightSet decode_weights(std::span<const char> bytes);
void save_weights(const WeightSet& weights, const std::filesystem::path& path);
WeightSet load_weights(const std::filesystem::path& path);
WeightSet load_weights(const std::filesystem::path& path, const GeneratorArch& arch);

/// Time-major activations: data[t * channels + c].
struct Activations {
  std::size_t channels = 0;
  std::vector<float> data;

  Activations() = default;
  Activations(std::size_t steps, std::size_t ch) : channels(ch), data(steps * ch, 0.0f) {}

  std::size_t steps() const { return channels == 0 ? 0 : data.size() / channels; }
  float* step(std::size_t t) { return data.data() + t * channels; }
  const float* step(std::size_t t) const { return data.data() + t * channels; }
};

/// Streaming memory of one layer: input history for convolutions, pending
/// overlap for transposed convolutions, nested state for residual blocks.
struct LayerState {
  std::vector<float> buffer;
  std::vector<LayerState> children;

  void clear();
  std::size_t bytes() const;
};

class Layer {
 public:
  virtual ~Layer() = default;

  virtual const std::string& name() const = 0;
  virtual std::size_t in_channels() const = 0;
  virtual std::size_t out_channels() const = 0;
  /// Output steps per input step.
  virtual std::size_t upsample() const { return 1; }

  /// Whole-sequence evaluation with zero history.
  virtual Activations forward(const Activations& x) const = 0;
  virtual LayerState make_state() const { return {}; }
  /// Incremental evaluation; chunked pushes concatenate to forward().
  virtual Activations push(const Activations& x, LayerState& state) const = 0;

  virtual void load(const WeightSet&) {}
  virtual void store(WeightSet&) const {}
  virtual std::size_t parameter_count() const { return 0; }
};

struct GeneratorStreamState {
  std::vector<LayerState> layers;

  void reset();
  std::size_t bytes() const;
};

/// Executable generator graph. Inference only; there is no lookahead knob,
/// a lookahead model is the same causal graph trained on shifted targets.
class Generator {
 public:
  /// Builds the layer graph with all-zero weights.
  explicit Generator(const GeneratorArch& arch = {});

  void load(const WeightSet& weights);
  WeightSet weights() const;

  const GeneratorArch& arch() const { return arch_; }
  const std::vector<std::unique_ptr<Layer>>& layers() const { return layers_; }
  std::size_t parameter_count() const;
  std::size_t weight_bytes() const { return parameter_count() * sizeof(float); }

  /// frames: time-major, arch.in_channels values per frame. Returns
  /// frame_step samples per frame.
  std::vector<float> forward_batch(std::span<const float> frames) const;
  std::vector<float> forward_batch(const LogMagSpectrogram& spec) const;

  GeneratorStreamState make_state() const;
  std::vector<float> push(GeneratorStreamState& state, std::span<const float> frame) const;

 private:
  Activations as_input(std::span<const float> frames) const;

  GeneratorArch arch_;
  std::vector<std::unique_ptr<Layer>> layers_;
};

Generator build_generator(const GeneratorArch& arch, const WeightSet& weights);

/// alpha = 1.
inline float elu(float x) { return x > 0.0f ? x : std::expm1(x); }

}  // namespace specinvert::melgan
