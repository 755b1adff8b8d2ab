// src/vocoder/vocoder.hpp

// Copyright 2026  The melhts Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <functional>

#include "common/matrix.hpp"
#include "signal/audio.hpp"
#include "signal/mel.hpp"
#include "signal/stft.hpp"

namespace melhts::vocoder {

/// Least-squares inversion of a log-mel spectrogram to STFT magnitudes:
/// exp, pseudo-inverse of the filterbank, clamp at zero, square root.
/// Returns T x (fft_size / 2 + 1).
Matrix MelToLinear(const signal::MelSpectrogram &mel,
                   const signal::MelFilterbank &fb);

struct GriffinLimOptions {
  int iterations = 64;
  std::uint32_t seed = 0;
  // Called after each projection with the iteration index (0 = initial
  // estimate) and the spectral convergence of the signal at that point.
  std::function<void(int, double)> observer;
};

/// Alternating projection between consistent spectrograms and the target
/// magnitude. The initial phase is uniform random from |seed|; with zero
/// iterations the result is the inverse STFT with zero phase.
signal::AudioBuffer GriffinLim(const Matrix &magnitude,
                               const signal::FrameSpec &spec,
                               int sample_rate_hz,
                               const GriffinLimOptions &options);

// ||  |STFT(y)| - magnitude ||_F / || magnitude ||_F
double SpectralConvergence(const signal::AudioBuffer &audio,
                           const Matrix &magnitude,
                           const signal::FrameSpec &spec);

// Mean absolute difference; the shapes must match exactly.
double MelL1(const signal::MelSpectrogram &a, const signal::MelSpectrogram &b);

}  // namespace melhts::vocoder
