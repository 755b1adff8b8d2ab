// src/signal/mel.cpp

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

#include "signal/mel.hpp"

#include <algorithm>
#include <string>

#include "common/error.hpp"

namespace melhts::signal {

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double MelToHz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

MelFilterbank BuildMelFilterbank(int num_filters, int sample_rate_hz,
                                 int fft_size, double fmin_hz,
                                 double fmax_hz) {
  Require(fft_size > 0 && (fft_size & (fft_size - 1)) == 0,
          ErrorKind::kParameter, "fft_size must be a power of two");
  Require(num_filters >= 1 && num_filters <= fft_size / 2,
          ErrorKind::kParameter,
          "num_filters must be in [1, fft_size/2], got " +
              std::to_string(num_filters));
  Require(sample_rate_hz > 0, ErrorKind::kParameter,
          "sample_rate_hz must be positive");
  Require(fmin_hz >= 0.0, ErrorKind::kParameter, "fmin_hz must be >= 0");
  Require(fmax_hz > fmin_hz, ErrorKind::kParameter,
          "fmax_hz must exceed fmin_hz");
  Require(fmax_hz <= sample_rate_hz / 2.0, ErrorKind::kParameter,
          "fmax_hz exceeds the Nyquist frequency");

  MelFilterbank fb;
  fb.num_filters = num_filters;
  fb.fmin_hz = fmin_hz;
  fb.fmax_hz = fmax_hz;
  fb.sample_rate_hz = sample_rate_hz;
  fb.fft_size = fft_size;

  const double mel_lo = HzToMel(fmin_hz);
  const double mel_hi = HzToMel(fmax_hz);
  std::vector<double> edges(static_cast<std::size_t>(num_filters) + 2);
  for (std::size_t i = 0; i < edges.size(); ++i)
    edges[i] = MelToHz(mel_lo + (mel_hi - mel_lo) * static_cast<double>(i) /
                                    (num_filters + 1));
  edges.front() = fmin_hz;
  edges.back() = fmax_hz;

  const int bins = fft_size / 2 + 1;
  fb.weights = Matrix(static_cast<std::size_t>(num_filters),
                      static_cast<std::size_t>(bins));
  fb.center_hz.resize(static_cast<std::size_t>(num_filters));
  for (int m = 0; m < num_filters; ++m) {
    const double lo = edges[m], mid = edges[m + 1], hi = edges[m + 2];
    fb.center_hz[m] = mid;
    for (int k = 0; k < bins; ++k) {
      const double f = static_cast<double>(k) * sample_rate_hz / fft_size;
      double w = 0.0;
      if (f > lo && f <= mid)
        w = (f - lo) / (mid - lo);
      else if (f > mid && f < hi)
        w = (hi - f) / (hi - mid);
      fb.weights(m, k) = w;
    }
  }
  return fb;
}

void ValidateMel(const MelSpectrogram &mel) {
  Require(mel.frames.rows() >= 1, ErrorKind::kInput,
          "mel spectrogram has no frames");
  Require(mel.num_filters >= 1 &&
              mel.frames.cols() == static_cast<std::size_t>(mel.num_filters),
          ErrorKind::kInput, "mel spectrogram width does not match num_filters");
  for (double v : mel.frames.data())
    Require(std::isfinite(v) && v >= mel.log_floor, ErrorKind::kInput,
            "mel spectrogram contains values below the log floor or "
            "non-finite values");
}

MelSpectrogram MelFromMagnitude(const Matrix &magnitude,
                                const MelFilterbank &fb,
                                double frame_shift_ms) {
  Require(magnitude.cols() == fb.weights.cols(), ErrorKind::kParameter,
          "magnitude width does not match the filterbank");
  constexpr double kFloorEnergy = 1e-10;
  MelSpectrogram mel;
  mel.num_filters = fb.num_filters;
  mel.frame_shift_ms = frame_shift_ms;
  mel.sample_rate_hz = fb.sample_rate_hz;
  mel.frames = Matrix(magnitude.rows(), static_cast<std::size_t>(fb.num_filters));
  for (std::size_t t = 0; t < magnitude.rows(); ++t) {
    auto mag = magnitude.row(t);
    for (int m = 0; m < fb.num_filters; ++m) {
      auto w = fb.weights.row(static_cast<std::size_t>(m));
      double e = 0.0;
      for (std::size_t k = 0; k < w.size(); ++k)
        if (w[k] != 0.0) e += w[k] * mag[k] * mag[k];
      mel.frames(t, static_cast<std::size_t>(m)) =
          e > kFloorEnergy ? std::max(std::log(e), kLogFloor) : kLogFloor;
    }
  }
  return mel;
}

MelSpectrogram ComputeMelSpectrogram(const AudioBuffer &audio,
                                     const FrameSpec &spec,
                                     const MelFilterbank &fb) {
  ValidateAudio(audio);
  Require(fb.sample_rate_hz == audio.sample_rate_hz, ErrorKind::kParameter,
          "filterbank sample rate " + std::to_string(fb.sample_rate_hz) +
              " does not match audio rate " +
              std::to_string(audio.sample_rate_hz));
  Require(fb.fft_size == spec.fft_size, ErrorKind::kParameter,
          "filterbank fft_size does not match the frame spec");
  return MelFromMagnitude(Magnitude(Stft(audio, spec)), fb,
                          spec.frame_shift_ms);
}

}  // namespace melhts::signal
