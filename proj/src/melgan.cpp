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

#include "specinvert/melgan.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "specinvert/dsp.hpp"
#include "specinvert/errors.hpp"

namespace specinvert::melgan {
namespace {

// out[o] += x * w[o] for a contiguous weight row.
inline void axpy(float x, const float* w, float* out, std::size_t n) {
  for (std::size_t o = 0; o < n; ++o) out[o] += x * w[o];
}

const Tensor& find_tensor(const WeightSet& weights, const std::string& name) {
  auto it = weights.find(name);
  if (it == weights.end()) fail(ErrorCode::kMissingTensor, "weights: missing tensor " + name);
  return it->second;
}

// Shared weight storage for both convolution flavours. Internally the
// kernel is held as [k][in][out] so the inner loop runs over outputs.
class KernelLayer : public Layer {
 public:
  KernelLayer(std::string name, std::size_t in, std::size_t out, std::size_t ks, bool transposed)
      : name_(std::move(name)),
        in_(in),
        out_(out),
        ks_(ks),
        transposed_(transposed),
        kernel_(ks * in * out, 0.0f),
        bias_(out, 0.0f) {}

  const std::string& name() const override { return name_; }
  std::size_t in_channels() const override { return in_; }
  std::size_t out_channels() const override { return out_; }
  std::size_t parameter_count() const override { return kernel_.size() + bias_.size(); }

  void load(const WeightSet& weights) override {
    const auto& k = find_tensor(weights, name_ + ".kernel");
    const auto& b = find_tensor(weights, name_ + ".bias");
    for (std::size_t a = 0; a < (transposed_ ? in_ : out_); ++a) {
      for (std::size_t c = 0; c < (transposed_ ? out_ : in_); ++c) {
        for (std::size_t j = 0; j < ks_; ++j) {
          const float v = k.values[(a * (transposed_ ? out_ : in_) + c) * ks_ + j];
          const std::size_t i = transposed_ ? a : c;
          const std::size_t o = transposed_ ? c : a;
          kernel_[(j * in_ + i) * out_ + o] = v;
        }
      }
    }
    std::copy(b.values.begin(), b.values.end(), bias_.begin());
  }

  void store(WeightSet& weights) const override {
    Tensor k;
    const std::size_t outer = transposed_ ? in_ : out_;
    const std::size_t inner = transposed_ ? out_ : in_;
    k.dims = {static_cast<std::uint32_t>(outer), static_cast<std::uint32_t>(inner),
              static_cast<std::uint32_t>(ks_)};
    k.values.resize(kernel_.size());
    for (std::size_t a = 0; a < outer; ++a) {
      for (std::size_t c = 0; c < inner; ++c) {
        for (std::size_t j = 0; j < ks_; ++j) {
          const std::size_t i = transposed_ ? a : c;
          const std::size_t o = transposed_ ? c : a;
          k.values[(a * inner + c) * ks_ + j] = kernel_[(j * in_ + i) * out_ + o];
        }
      }
    }
    weights[name_ + ".kernel"] = std::move(k);
    weights[name_ + ".bias"] = Tensor{{static_cast<std::uint32_t>(out_)}, bias_};
  }

 protected:
  const float* tap(std::size_t j, std::size_t i) const { return kernel_.data() + (j * in_ + i) * out_; }

  std::string name_;
  std::size_t in_;
  std::size_t out_;
  std::size_t ks_;
  bool transposed_;
  std::vector<float> kernel_;
  std::vector<float> bias_;
};

// Tap j reads input (ks - 1 - j) * dilation steps in the past.
class CausalConv1d final : public KernelLayer {
 public:
  CausalConv1d(std::string name, std::size_t in, std::size_t out, std::size_t ks,
               std::size_t dilation)
      : KernelLayer(std::move(name), in, out, ks, false), dilation_(dilation) {}

  std::size_t history() const { return (ks_ - 1) * dilation_; }

  Activations forward(const Activations& x) const override {
    const std::size_t steps = x.steps();
    Activations y(steps, out_);
    for (std::size_t t = 0; t < steps; ++t) {
      float* dst = y.step(t);
      std::copy(bias_.begin(), bias_.end(), dst);
      for (std::size_t j = 0; j < ks_; ++j) {
        const std::size_t back = (ks_ - 1 - j) * dilation_;
        if (back > t) continue;
        const float* src = x.step(t - back);
        for (std::size_t i = 0; i < in_; ++i) axpy(src[i], tap(j, i), dst, out_);
      }
    }
    return y;
  }

  LayerState make_state() const override {
    LayerState s;
    s.buffer.assign(history() * in_, 0.0f);
    return s;
  }

  Activations push(const Activations& x, LayerState& state) const override {
    const std::size_t steps = x.steps();
    const std::size_t hist = history();
    // ext = history ++ x, so output t reads ext[t + j * dilation].
    std::vector<float> ext(state.buffer);
    ext.insert(ext.end(), x.data.begin(), x.data.end());
    Activations y(steps, out_);
    for (std::size_t t = 0; t < steps; ++t) {
      float* dst = y.step(t);
      std::copy(bias_.begin(), bias_.end(), dst);
      for (std::size_t j = 0; j < ks_; ++j) {
        const float* src = ext.data() + (t + j * dilation_) * in_;
        for (std::size_t i = 0; i < in_; ++i) axpy(src[i], tap(j, i), dst, out_);
      }
    }
    std::copy(ext.end() - static_cast<std::ptrdiff_t>(hist * in_), ext.end(), state.buffer.begin());
    return y;
  }

 private:
  std::size_t dilation_;
};

// Input step t spreads its kernel over outputs t*stride .. t*stride+ks-1.
// Contributions past the current end are carried to the next push.
class CausalConvTranspose1d final : public KernelLayer {
 public:
  CausalConvTranspose1d(std::string name, std::size_t in, std::size_t out, std::size_t ks,
                        std::size_t stride)
      : KernelLayer(std::move(name), in, out, ks, true), stride_(stride) {}

  std::size_t upsample() const override { return stride_; }

  Activations forward(const Activations& x) const override {
    const std::size_t steps = x.steps();
    const std::size_t out_steps = steps * stride_;
    Activations y(out_steps, out_);
    for (std::size_t t = 0; t < steps; ++t) {
      const float* src = x.step(t);
      for (std::size_t j = 0; j < ks_; ++j) {
        const std::size_t pos = t * stride_ + j;
        if (pos >= out_steps) break;
        float* dst = y.step(pos);
        for (std::size_t i = 0; i < in_; ++i) axpy(src[i], tap(j, i), dst, out_);
      }
    }
    for (std::size_t p = 0; p < out_steps; ++p) {
      float* dst = y.step(p);
      for (std::size_t o = 0; o < out_; ++o) dst[o] += bias_[o];
    }
    return y;
  }

  LayerState make_state() const override {
    LayerState s;
    s.buffer.assign(std::max(ks_, stride_) * out_, 0.0f);
    return s;
  }

  Activations push(const Activations& x, LayerState& state) const override {
    const std::size_t steps = x.steps();
    const std::size_t span = std::max(ks_, stride_);
    auto& acc = state.buffer;
    Activations y(steps * stride_, out_);
    for (std::size_t t = 0; t < steps; ++t) {
      const float* src = x.step(t);
      for (std::size_t j = 0; j < ks_; ++j) {
        float* dst = acc.data() + j * out_;
        for (std::size_t i = 0; i < in_; ++i) axpy(src[i], tap(j, i), dst, out_);
      }
      for (std::size_t p = 0; p < stride_; ++p) {
        float* dst = y.step(t * stride_ + p);
        const float* pending = acc.data() + p * out_;
        for (std::size_t o = 0; o < out_; ++o) dst[o] = pending[o] + bias_[o];
      }
      std::shift_left(acc.begin(), acc.end(), static_cast<std::ptrdiff_t>(stride_ * out_));
      std::fill(acc.begin() + static_cast<std::ptrdiff_t>((span - stride_) * out_), acc.end(), 0.0f);
    }
    return y;
  }

 private:
  std::size_t stride_;
};

class Elu final : public Layer {
 public:
  Elu(std::string name, std::size_t channels) : name_(std::move(name)), channels_(channels) {}

  const std::string& name() const override { return name_; }
  std::size_t in_channels() const override { return channels_; }
  std::size_t out_channels() const override { return channels_; }

  Activations forward(const Activations& x) const override {
    Activations y = x;
    for (float& v : y.data) v = elu(v);
    return y;
  }

  Activations push(const Activations& x, LayerState&) const override { return forward(x); }

 private:
  std::string name_;
  std::size_t channels_;
};

class ResidualBlock final : public Layer {
 public:
  ResidualBlock(std::string name, std::size_t channels, std::size_t ks, std::size_t dilation)
      : name_(name),
        channels_(channels),
        dilated_(name + ".conv_dil", channels, channels, ks, dilation),
        pointwise_(name + ".conv_pw", channels, channels, 1, 1) {}

  const std::string& name() const override { return name_; }
  std::size_t in_channels() const override { return channels_; }
  std::size_t out_channels() const override { return channels_; }
  std::size_t parameter_count() const override {
    return dilated_.parameter_count() + pointwise_.parameter_count();
  }

  void load(const WeightSet& w) override {
    dilated_.load(w);
    pointwise_.load(w);
  }
  void store(WeightSet& w) const override {
    dilated_.store(w);
    pointwise_.store(w);
  }

  Activations forward(const Activations& x) const override {
    Activations h = x;
    for (float& v : h.data) v = elu(v);
    Activations y = pointwise_.forward(dilated_.forward(h));
    for (std::size_t n = 0; n < y.data.size(); ++n) y.data[n] += x.data[n];
    return y;
  }

  LayerState make_state() const override {
    LayerState s;
    s.children = {dilated_.make_state(), pointwise_.make_state()};
    return s;
  }

  Activations push(const Activations& x, LayerState& state) const override {
    Activations h = x;
    for (float& v : h.data) v = elu(v);
    Activations y = pointwise_.push(dilated_.push(h, state.children[0]), state.children[1]);
    for (std::size_t n = 0; n < y.data.size(); ++n) y.data[n] += x.data[n];
    return y;
  }

 private:
  std::string name_;
  std::size_t channels_;
  CausalConv1d dilated_;
  CausalConv1d pointwise_;
};

}  // namespace

void GeneratorArch::validate() const {
  require(in_channels > 0 && in_conv_channels > 0, "generator: channel counts must be positive");
  require(in_kernel > 0 && out_kernel > 0 && res_kernel > 0,
          "generator: kernel sizes must be positive");
  require(!upscales.empty(), "generator: at least one upscale block is required");
  require(!dilations.empty(), "generator: at least one residual dilation is required");
  for (std::size_t b = 0; b < upscales.size(); ++b) {
    const auto& u = upscales[b];
    const std::string where = "generator: upscale block " + std::to_string(b);
    require(u.channels > 0, where + " has no channels");
    require(u.stride > 0 && u.kernel_size > 0, where + " needs positive kernel size and stride");
  }
  for (std::size_t d : dilations) require(d > 0, "generator: dilations must be positive");
  require(upsampling_factor() == frame_step,
          "generator: stride product " + std::to_string(upsampling_factor()) +
              " does not equal frame_step " + std::to_string(frame_step));
}

std::size_t GeneratorArch::upsampling_factor() const {
  return std::accumulate(upscales.begin(), upscales.end(), std::size_t{1},
                         [](std::size_t acc, const UpscaleSpec& u) { return acc * u.stride; });
}

std::size_t GeneratorArch::parameter_count() const {
  std::size_t total = 0;
  for (const auto& spec : tensor_specs(*this)) {
    total += std::accumulate(spec.dims.begin(), spec.dims.end(), std::size_t{1},
                             std::multiplies<>());
  }
  return total;
}

std::vector<TensorSpec> tensor_specs(const GeneratorArch& arch) {
  using U = std::uint32_t;
  std::vector<TensorSpec> specs;
  auto conv = [&](const std::string& name, std::size_t in, std::size_t out, std::size_t ks) {
    specs.push_back({name + ".kernel", {U(out), U(in), U(ks)}});
    specs.push_back({name + ".bias", {U(out)}});
  };
  conv("in_conv", arch.in_channels, arch.in_conv_channels, arch.in_kernel);
  std::size_t ch = arch.in_conv_channels;
  for (std::size_t b = 0; b < arch.upscales.size(); ++b) {
    const auto& u = arch.upscales[b];
    const std::string up = "up" + std::to_string(b);
    specs.push_back({up + ".tconv.kernel", {U(ch), U(u.channels), U(u.kernel_size)}});
    specs.push_back({up + ".tconv.bias", {U(u.channels)}});
    ch = u.channels;
    for (std::size_t r = 0; r < arch.dilations.size(); ++r) {
      const std::string res = up + ".res" + std::to_string(r);
      conv(res + ".conv_dil", ch, ch, arch.res_kernel);
      conv(res + ".conv_pw", ch, ch, 1);
    }
  }
  conv("out_conv", ch, 1, arch.out_kernel);
  return specs;
}

void LayerState::clear() {
  std::fill(buffer.begin(), buffer.end(), 0.0f);
  for (auto& c : children) c.clear();
}

std::size_t LayerState::bytes() const {
  std::size_t total = buffer.size() * sizeof(float);
  for (const auto& c : children) total += c.bytes();
  return total;
}

void GeneratorStreamState::reset() {
  for (auto& l : layers) l.clear();
}

std::size_t GeneratorStreamState::bytes() const {
  std::size_t total = 0;
  for (const auto& l : layers) total += l.bytes();
  return total;
}

Generator::Generator(const GeneratorArch& arch) : arch_(arch) {
  arch_.validate();
  layers_.push_back(std::make_unique<CausalConv1d>("in_conv", arch_.in_channels,
                                                   arch_.in_conv_channels, arch_.in_kernel, 1));
  std::size_t ch = arch_.in_conv_channels;
  for (std::size_t b = 0; b < arch_.upscales.size(); ++b) {
    const auto& u = arch_.upscales[b];
    const std::string up = "up" + std::to_string(b);
    layers_.push_back(std::make_unique<Elu>(up + ".elu", ch));
    layers_.push_back(
        std::make_unique<CausalConvTranspose1d>(up + ".tconv", ch, u.channels, u.kernel_size, u.stride));
    ch = u.channels;
    for (std::size_t r = 0; r < arch_.dilations.size(); ++r) {
      layers_.push_back(std::make_unique<ResidualBlock>(up + ".res" + std::to_string(r), ch,
                                                        arch_.res_kernel, arch_.dilations[r]));
    }
  }
  layers_.push_back(std::make_unique<Elu>("out.elu", ch));
  layers_.push_back(std::make_unique<CausalConv1d>("out_conv", ch, 1, arch_.out_kernel, 1));
}

void Generator::load(const WeightSet& weights) {
  validate_weights(weights, arch_);
  for (auto& layer : layers_) layer->load(weights);
}

WeightSet Generator::weights() const {
  WeightSet w;
  for (const auto& layer : layers_) layer->store(w);
  return w;
}

std::size_t Generator::parameter_count() const {
  std::size_t total = 0;
  for (const auto& layer : layers_) total += layer->parameter_count();
  return total;
}

Activations Generator::as_input(std::span<const float> frames) const {
  require(frames.size() % arch_.in_channels == 0,
          "generator: input is not a whole number of " + std::to_string(arch_.in_channels) +
              "-bin frames");
  check_finite(frames, "generator input");
  Activations x;
  x.channels = arch_.in_channels;
  x.data.assign(frames.begin(), frames.end());
  return x;
}

std::vector<float> Generator::forward_batch(std::span<const float> frames) const {
  Activations x = as_input(frames);
  for (const auto& layer : layers_) x = layer->forward(x);
  return std::move(x.data);
}

std::vector<float> Generator::forward_batch(const LogMagSpectrogram& spec) const {
  require(spec.num_bins == arch_.in_channels,
          "generator: spectrogram has " + std::to_string(spec.num_bins) + " bins, expected " +
              std::to_string(arch_.in_channels));
  return forward_batch(std::span<const float>(spec.values));
}

GeneratorStreamState Generator::make_state() const {
  GeneratorStreamState state;
  for (const auto& layer : layers_) state.layers.push_back(layer->make_state());
  return state;
}

std::vector<float> Generator::push(GeneratorStreamState& state, std::span<const float> frame) const {
  require(frame.size() == arch_.in_channels,
          "generator: frame has " + std::to_string(frame.size()) + " bins, expected " +
              std::to_string(arch_.in_channels));
  require(state.layers.size() == layers_.size(), "generator: stream state built for another graph");
  Activations x = as_input(frame);
  for (std::size_t l = 0; l < layers_.size(); ++l) x = layers_[l]->push(x, state.layers[l]);
  return std::move(x.data);
}

Generator build_generator(const GeneratorArch& arch, const WeightSet& weights) {
  Generator g(arch);
  g.load(weights);
  return g;
}

}  // namespace specinvert::melgan
