// src/signal/mel.hpp

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

#include <cmath>
#include <vector>

#include "common/matrix.hpp"
#include "signal/audio.hpp"
#include "signal/stft.hpp"

namespace melhts::signal {

inline const double kLogFloor = std::log(1e-10);

double HzToMel(double hz);
double MelToHz(double mel);

/// Triangular filters with centers equally spaced on the mel scale.
/// weights is num_filters x (fft_size/2 + 1), no area normalization.
struct MelFilterbank {
  int num_filters = 0;
  double fmin_hz = 0.0;
  double fmax_hz = 0.0;
  int sample_rate_hz = 0;
  int fft_size = 0;
  std::vector<double> center_hz;
  Matrix weights;
};

MelFilterbank BuildMelFilterbank(int num_filters, int sample_rate_hz,
                                 int fft_size, double fmin_hz, double fmax_hz);

/// T x num_filters log mel energies plus the metadata needed to interpret
/// them. Every entry is finite and >= log_floor.
struct MelSpectrogram {
  Matrix frames;
  double frame_shift_ms = 10.0;
  int num_filters = 0;
  int sample_rate_hz = 22050;
  double log_floor = kLogFloor;

  std::size_t num_frames() const { return frames.rows(); }
};

void ValidateMel(const MelSpectrogram &mel);

// entry(t, d) = log(max(w_d . |X_t|^2, 1e-10))
MelSpectrogram ComputeMelSpectrogram(const AudioBuffer &audio,
                                     const FrameSpec &spec,
                                     const MelFilterbank &fb);

// Same projection applied to an existing magnitude spectrogram.
MelSpectrogram MelFromMagnitude(const Matrix &magnitude,
                                const MelFilterbank &fb,
                                double frame_shift_ms);

}  // namespace melhts::signal
