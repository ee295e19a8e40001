# Copyright 2026 The specinvert Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Real-time magnitude spectrogram inversion: Griffin-Lim and causal MelGAN."""

from ._core import (
    Generator,
    GeneratorArch,
    GlConfig,
    GlStreamer,
    LogMagSpectrogram,
    SpecinvertError,
    StreamConfig,
    StreamingIstft,
    analyze,
    deemphasis,
    gl_nonstreaming,
    gl_nonstreaming_traced,
    hann_window,
    istft,
    load_spectrogram,
    log_compress,
    log_expand,
    preemphasis,
    save_spectrogram,
    snr,
    spectral_convergence,
    stft,
    wav_read,
    wav_write,
)

__all__ = [name for name in dir() if not name.startswith("_")]
