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

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstring>
#include <memory>

#include "specinvert/specinvert.hpp"

namespace py = pybind11;
namespace si = specinvert;
namespace mg = specinvert::melgan;

namespace {

using F64 = py::array_t<double, py::array::c_style | py::array::forcecast>;
using F32 = py::array_t<float, py::array::c_style | py::array::forcecast>;
using C128 = py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

template <typename T>
std::span<const T> view(const py::array_t<T, py::array::c_style | py::array::forcecast>& a) {
  return {a.data(), static_cast<std::size_t>(a.size())};
}

template <typename T>
py::array_t<T> to_numpy(std::vector<T> v) {
  auto* heap = new std::vector<T>(std::move(v));
  py::capsule owner(heap, [](void* p) { delete static_cast<std::vector<T>*>(p); });
  return py::array_t<T>(static_cast<py::ssize_t>(heap->size()), heap->data(), owner);
}

py::array_t<float> frames_view(const si::LogMagSpectrogram& s) {
  py::array_t<float> out({static_cast<py::ssize_t>(s.num_frames()),
                          static_cast<py::ssize_t>(s.num_bins)});
  std::memcpy(out.mutable_data(), s.values.data(), s.values.size() * sizeof(float));
  return out;
}

si::LogMagSpectrogram from_frames(const F32& frames, const si::StreamConfig& cfg) {
  if (frames.ndim() != 2 || static_cast<std::size_t>(frames.shape(1)) != cfg.num_bins()) {
    throw si::Error(si::ErrorCode::kShapeMismatch, "frames must have shape (T, num_bins)");
  }
  auto s = si::LogMagSpectrogram::empty_like(cfg);
  const auto v = view(frames);
  s.values.assign(v.begin(), v.end());
  return s;
}

// A generator with its own streaming state, so Python code can push frames
// without managing the state object separately.
class PyGenerator {
 public:
  explicit PyGenerator(std::shared_ptr<mg::Generator> g)
      : g_(std::move(g)), state_(g_->make_state()) {}

  static PyGenerator random(std::uint64_t seed, const mg::GeneratorArch& arch) {
    return PyGenerator(std::make_shared<mg::Generator>(
        mg::build_generator(arch, mg::random_weights(arch, seed))));
  }
  static PyGenerator from_file(const std::filesystem::path& path, const mg::GeneratorArch& arch) {
    return PyGenerator(std::make_shared<mg::Generator>(
        mg::build_generator(arch, mg::load_weights(path, arch))));
  }

  py::array_t<float> forward(const F32& frames) const {
    return to_numpy(g_->forward_batch(view(frames)));
  }
  py::array_t<float> push(const F32& frame) { return to_numpy(g_->push(state_, view(frame))); }
  void reset() { state_.reset(); }
  void save(const std::filesystem::path& path) const { mg::save_weights(g_->weights(), path); }
  std::size_t parameter_count() const { return g_->parameter_count(); }
  std::size_t state_bytes() const { return state_.bytes(); }

 private:
  std::shared_ptr<mg::Generator> g_;
  mg::GeneratorStreamState state_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Streaming spectrogram inversion core";

  static py::exception<si::Error> error(m, "SpecinvertError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const si::Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error.ptr())(e.what());
      exc.attr("code") = si::to_string(e.code());
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  py::class_<si::StreamConfig>(m, "StreamConfig")
      .def(py::init<>())
      .def_readwrite("sample_rate", &si::StreamConfig::sample_rate)
      .def_readwrite("fft_size", &si::StreamConfig::fft_size)
      .def_readwrite("frame_size", &si::StreamConfig::frame_size)
      .def_readwrite("frame_step", &si::StreamConfig::frame_step)
      .def_readwrite("preemph_coef", &si::StreamConfig::preemph_coef)
      .def_readwrite("log_delta", &si::StreamConfig::log_delta)
      .def_property_readonly("num_bins", &si::StreamConfig::num_bins)
      .def("validate", &si::StreamConfig::validate);

  m.def("preemphasis", [](const F64& x, double coef) { return to_numpy(si::preemphasis(view(x), coef)); },
        py::arg("x"), py::arg("coef") = 0.97);
  m.def("deemphasis", [](const F64& x, double coef) { return to_numpy(si::deemphasis(view(x), coef)); },
        py::arg("x"), py::arg("coef") = 0.97);
  m.def("hann_window", [](std::size_t n) { return to_numpy(si::hann_window(n)); });

  m.def(
      "stft",
      [](const F64& x, const si::StreamConfig& cfg) {
        const auto spec = si::batch_stft(view(x), cfg);
        py::array_t<std::complex<double>> out(
            {static_cast<py::ssize_t>(spec.size()), static_cast<py::ssize_t>(cfg.num_bins())});
        auto* dst = out.mutable_data();
        for (const auto& f : spec) dst = std::copy(f.begin(), f.end(), dst);
        return out;
      },
      py::arg("x"), py::arg("cfg") = si::StreamConfig{});
  m.def(
      "istft",
      [](const C128& spec, const si::StreamConfig& cfg) {
        if (spec.ndim() != 2) throw si::Error(si::ErrorCode::kShapeMismatch, "spec must be 2-D");
        si::ComplexSpectrogram frames(static_cast<std::size_t>(spec.shape(0)));
        const auto bins = static_cast<std::size_t>(spec.shape(1));
        for (std::size_t t = 0; t < frames.size(); ++t) {
          frames[t].assign(spec.data() + t * bins, spec.data() + (t + 1) * bins);
        }
        return to_numpy(si::batch_istft(frames, cfg));
      },
      py::arg("spec"), py::arg("cfg") = si::StreamConfig{});

  py::class_<si::StreamingIstft>(m, "StreamingIstft")
      .def(py::init<const si::StreamConfig&>(), py::arg("cfg") = si::StreamConfig{})
      .def("push", [](si::StreamingIstft& s, const C128& f) { return to_numpy(s.push(view(f))); })
      .def("flush", [](si::StreamingIstft& s) { return to_numpy(s.flush()); })
      .def("reset", &si::StreamingIstft::reset)
      .def_property_readonly("delay_samples", &si::StreamingIstft::delay_samples);

  py::class_<si::LogMagSpectrogram>(m, "LogMagSpectrogram")
      .def_static("from_frames", &from_frames, py::arg("frames"),
                  py::arg("cfg") = si::StreamConfig{})
      .def_readonly("sample_rate", &si::LogMagSpectrogram::sample_rate)
      .def_readonly("fft_size", &si::LogMagSpectrogram::fft_size)
      .def_readonly("frame_size", &si::LogMagSpectrogram::frame_size)
      .def_readonly("frame_step", &si::LogMagSpectrogram::frame_step)
      .def_readonly("num_bins", &si::LogMagSpectrogram::num_bins)
      .def_property_readonly("num_frames", &si::LogMagSpectrogram::num_frames)
      .def_property_readonly("frames", &frames_view)
      .def("geometry", &si::LogMagSpectrogram::geometry, py::arg("base") = si::StreamConfig{});

  m.def("analyze", [](const F64& x, const si::StreamConfig& cfg) { return si::analyze(view(x), cfg); },
        py::arg("x"), py::arg("cfg") = si::StreamConfig{});
  m.def("log_compress",
        [](const F64& mag, double delta) { return to_numpy(si::log_compress(view(mag), delta)); },
        py::arg("mag"), py::arg("delta") = 1e-2);
  m.def("log_expand",
        [](const F64& v, double delta) { return to_numpy(si::log_expand(view(v), delta)); },
        py::arg("logmag"), py::arg("delta") = 1e-2);
  m.def("save_spectrogram", &si::save_spectrogram);
  m.def("load_spectrogram", &si::load_spectrogram);

  py::class_<si::GlConfig>(m, "GlConfig")
      .def(py::init<>())
      .def_readwrite("w_size", &si::GlConfig::w_size)
      .def_readwrite("n_iters", &si::GlConfig::n_iters)
      .def_readwrite("ind", &si::GlConfig::ind)
      .def_readwrite("base", &si::GlConfig::base)
      .def("validate", &si::GlConfig::validate)
      .def_property_readonly("lookahead_delay_samples", &si::GlConfig::lookahead_delay_samples)
      .def_property_readonly("total_delay_samples", &si::GlConfig::total_delay_samples);

  py::class_<si::GlStreamer>(m, "GlStreamer")
      .def(py::init<const si::GlConfig&>(), py::arg("cfg") = si::GlConfig{})
      .def("push", [](si::GlStreamer& g, const F32& f) { return to_numpy(g.push(view(f))); })
      .def("flush", [](si::GlStreamer& g) { return to_numpy(g.flush()); })
      .def("reset", &si::GlStreamer::reset)
      .def_property_readonly("frames_pushed", &si::GlStreamer::frames_pushed)
      .def_property_readonly("state_bytes", &si::GlStreamer::state_bytes);

  m.def(
      "gl_nonstreaming",
      [](const si::LogMagSpectrogram& s, std::size_t n, const si::StreamConfig& cfg) {
        return to_numpy(si::gl_nonstreaming(s, n, cfg));
      },
      py::arg("spec"), py::arg("n_iters") = 70, py::arg("cfg") = si::StreamConfig{});
  m.def(
      "gl_nonstreaming_traced",
      [](const si::LogMagSpectrogram& s, std::size_t n, const si::StreamConfig& cfg) {
        auto r = si::gl_nonstreaming_traced(s, n, cfg);
        return py::make_tuple(to_numpy(std::move(r.samples)), to_numpy(std::move(r.convergence_db)));
      },
      py::arg("spec"), py::arg("n_iters") = 70, py::arg("cfg") = si::StreamConfig{});

  py::class_<mg::GeneratorArch>(m, "GeneratorArch")
      .def(py::init<>())
      .def_readwrite("in_channels", &mg::GeneratorArch::in_channels)
      .def_readwrite("frame_step", &mg::GeneratorArch::frame_step)
      .def_property_readonly("upsampling_factor", &mg::GeneratorArch::upsampling_factor)
      .def_property_readonly("parameter_count", &mg::GeneratorArch::parameter_count);

  py::class_<PyGenerator>(m, "Generator")
      .def_static("random", &PyGenerator::random, py::arg("seed"),
                  py::arg("arch") = mg::GeneratorArch{})
      .def_static("from_file", &PyGenerator::from_file, py::arg("path"),
                  py::arg("arch") = mg::GeneratorArch{})
      .def("forward", &PyGenerator::forward, py::arg("frames"))
      .def("push", &PyGenerator::push, py::arg("frame"))
      .def("reset", &PyGenerator::reset)
      .def("save", &PyGenerator::save)
      .def_property_readonly("parameter_count", &PyGenerator::parameter_count)
      .def_property_readonly("state_bytes", &PyGenerator::state_bytes);

  m.def("spectral_convergence", [](const F64& ref, const F64& est) {
    return si::spectral_convergence(view(ref), view(est));
  });
  m.def("snr", [](const F64& ref, const F64& est) { return si::snr(view(ref), view(est)); });

  m.def(
      "wav_read",
      [](const std::filesystem::path& path, std::uint32_t rate) {
        auto clip = si::wav_read(path, rate);
        return py::make_tuple(to_numpy(std::move(clip.samples)), clip.sample_rate);
      },
      py::arg("path"), py::arg("expected_rate") = 16000);
  m.def(
      "wav_write",
      [](const std::filesystem::path& path, const F64& samples, std::uint32_t rate) {
        const auto v = view(samples);
        si::wav_write(path, {std::vector<double>(v.begin(), v.end()), rate});
      },
      py::arg("path"), py::arg("samples"), py::arg("sample_rate") = 16000);
}
