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

#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <string>

#include "binary_io.hpp"
#include "specinvert/errors.hpp"
#include "specinvert/melgan.hpp"

namespace specinvert::melgan {
namespace {

constexpr std::string_view kMagic = "GWT1";
constexpr std::uint32_t kVersion = 1;

std::size_t element_count(const std::vector<std::uint32_t>& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

std::string dims_string(const std::vector<std::uint32_t>& dims) {
  std::string s = "[";
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(dims[i]);
  }
  return s + "]";
}

}  // namespace

WeightSet random_weights(const GeneratorArch& arch, std::uint64_t seed) {
  arch.validate();
  std::mt19937_64 rng(seed);
  WeightSet weights;
  std::size_t fan_in = 1;
  for (const auto& spec : tensor_specs(arch)) {
    // Kernels are [out, in, k] or [in, out, k]; the bias that follows reuses
    // its kernel's fan-in.
    if (spec.dims.size() == 3) {
      const bool transposed = spec.name.find(".tconv.") != std::string::npos;
      fan_in = static_cast<std::size_t>(transposed ? spec.dims[0] : spec.dims[1]) * spec.dims[2];
    }
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    Tensor t{spec.dims, std::vector<float>(element_count(spec.dims))};
    for (auto& v : t.values) {
      // 53 random bits -> [0, 1); std::uniform_real_distribution is not
      // reproducible across standard libraries.
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      v = static_cast<float>((2.0 * u - 1.0) * bound);
    }
    weights.emplace(spec.name, std::move(t));
  }
  return weights;
}

WeightSet zero_weights(const GeneratorArch& arch) {
  WeightSet weights;
  for (const auto& spec : tensor_specs(arch)) {
    weights.emplace(spec.name, Tensor{spec.dims, std::vector<float>(element_count(spec.dims), 0.0f)});
  }
  return weights;
}

void validate_weights(const WeightSet& weights, const GeneratorArch& arch) {
  const auto specs = tensor_specs(arch);
  std::set<std::string> expected;
  for (const auto& spec : specs) expected.insert(spec.name);
  for (const auto& [name, tensor] : weights) {
    if (!expected.count(name)) fail(ErrorCode::kUnknownTensor, "weights: unknown tensor " + name);
  }
  for (const auto& spec : specs) {
    auto it = weights.find(spec.name);
    if (it == weights.end()) fail(ErrorCode::kMissingTensor, "weights: missing tensor " + spec.name);
    if (it->second.dims != spec.dims) {
      fail(ErrorCode::kShapeMismatch, "weights: shape mismatch for " + spec.name + ": got " +
                                          dims_string(it->second.dims) + ", expected " +
                                          dims_string(spec.dims));
    }
    if (it->second.values.size() != element_count(spec.dims)) {
      fail(ErrorCode::kShapeMismatch, "weights: " + spec.name + " holds " +
                                          std::to_string(it->second.values.size()) +
                                          " values for shape " + dims_string(spec.dims));
    }
  }
}

std::vector<char> encode_weights(const WeightSet& weights) {
  detail::ByteWriter w;
  w.bytes(kMagic);
  w.u32(kVersion);
  w.u32(static_cast<std::uint32_t>(weights.size()));
  for (const auto& [name, tensor] : weights) {
    require(name.size() <= 0xffff, "weights: tensor name too long: " + name);
    require(tensor.dims.size() <= 0xff, "weights: tensor rank too large: " + name);
    require(tensor.values.size() == element_count(tensor.dims),
            "weights: " + name + " value count does not match its shape");
    w.u16(static_cast<std::uint16_t>(name.size()));
    w.bytes(name);
    w.u8(static_cast<std::uint8_t>(tensor.dims.size()));
    for (auto d : tensor.dims) w.u32(d);
    for (float v : tensor.values) w.f32(v);
  }
  return w.data();
}

WeightSet decode_weights(std::span<const char> bytes) {
  detail::ByteReader r(bytes, "weights");
  if (r.remaining() < kMagic.size() || r.bytes(kMagic.size()) != kMagic) {
    fail(ErrorCode::kBadMagic, "weights: bad magic, expected \"GWT1\"");
  }
  const auto version = r.u32();
  if (version != kVersion) {
    fail(ErrorCode::kVersionMismatch, "weights: unsupported version " + std::to_string(version));
  }
  const auto count = r.u32();
  WeightSet weights;
  for (std::uint32_t n = 0; n < count; ++n) {
    const auto name_len = r.u16();
    std::string name = r.bytes(name_len);
    Tensor t;
    t.dims.resize(r.u8());
    for (auto& d : t.dims) d = r.u32();
    const std::size_t elems = element_count(t.dims);
    if (elems > r.remaining() / 4) {
      fail(ErrorCode::kTruncated, "weights: payload of " + name + " truncated");
    }
    t.values.resize(elems);
    for (auto& v : t.values) v = r.f32();
    if (!weights.emplace(name, std::move(t)).second) {
      fail(ErrorCode::kInvalidArgument, "weights: duplicate tensor " + name);
    }
  }
  return weights;
}

void save_weights(const WeightSet& weights, const std::filesystem::path& path) {
  detail::write_file_atomic(path, encode_weights(weights));
}

WeightSet load_weights(const std::filesystem::path& path) {
  return decode_weights(detail::read_file(path));
}

WeightSet load_weights(const std::filesystem::path& path, const GeneratorArch& arch) {
  auto weights = load_weights(path);
  validate_weights(weights, arch);
  return weights;
}

}  // namespace specinvert::melgan
