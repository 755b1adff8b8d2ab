// src/signal/contours.cpp

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

#include "signal/contours.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

#include "common/error.hpp"
#include "common/fileio.hpp"

namespace melhts::signal {

std::vector<FluxBand> DefaultFluxBands() {
  return {{2000.0, 4000.0, 1.0}, {4000.0, 8000.0, 1.0}};
}

EnergyContour ShortTermEnergy(const AudioBuffer &audio, const FrameSpec &spec) {
  ValidateAudio(audio);
  ValidateFrameSpec(spec, audio.sample_rate_hz);
  const std::size_t len = spec.LengthSamples(audio.sample_rate_hz);
  const std::size_t shift = spec.ShiftSamples(audio.sample_rate_hz);
  const std::size_t frames =
      spec.NumFrames(audio.samples.size(), audio.sample_rate_hz);
  Require(frames > 0, ErrorKind::kInput, "audio is shorter than one frame");
  const auto window = MakeWindow(spec.window, len);
  EnergyContour out;
  out.frame_shift_ms = spec.frame_shift_ms;
  out.values.resize(frames);
  for (std::size_t t = 0; t < frames; ++t) {
    double e = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
      const double v = audio.samples[t * shift + i] * window[i];
      e += v * v;
    }
    out.values[t] = e;
  }
  return out;
}

FluxContour SubBandSpectralFlux(const Matrix &stft_magnitude,
                                const std::vector<FluxBand> &bands,
                                const FrameSpec &spec, int sample_rate_hz) {
  Require(stft_magnitude.rows() >= 2, ErrorKind::kInput,
          "spectral flux needs at least two frames");
  Require(stft_magnitude.cols() == static_cast<std::size_t>(spec.fft_size / 2 + 1),
          ErrorKind::kParameter, "magnitude width does not match fft_size");
  Require(!bands.empty(), ErrorKind::kParameter, "no flux bands given");
  const double nyquist = sample_rate_hz / 2.0;
  for (std::size_t b = 0; b < bands.size(); ++b) {
    const auto &band = bands[b];
    Require(band.low_hz >= 0.0 && band.high_hz > band.low_hz &&
                band.high_hz <= nyquist,
            ErrorKind::kParameter,
            "band_edges_hz: band " + std::to_string(b) +
                " must satisfy 0 <= low < high <= Nyquist (" +
                std::to_string(nyquist) + " Hz)");
    Require(b == 0 || band.low_hz >= bands[b - 1].high_hz,
            ErrorKind::kParameter,
            "band_edges_hz: bands must be ascending and non-overlapping");
    Require(band.weight >= 0.0, ErrorKind::kParameter,
            "band weights must be nonnegative");
  }

  const double bin_hz = static_cast<double>(sample_rate_hz) / spec.fft_size;
  FluxContour out;
  out.bands = bands;
  out.frame_shift_ms = spec.frame_shift_ms;
  out.values.assign(stft_magnitude.rows(), 0.0);
  for (std::size_t t = 1; t < stft_magnitude.rows(); ++t) {
    auto cur = stft_magnitude.row(t);
    auto prev = stft_magnitude.row(t - 1);
    double total = 0.0;
    for (const auto &band : bands) {
      double sum = 0.0;
      for (std::size_t k = 0; k < cur.size(); ++k) {
        const double f = static_cast<double>(k) * bin_hz;
        if (f < band.low_hz || f >= band.high_hz) continue;
        sum += std::max(cur[k] - prev[k], 0.0);
      }
      total += band.weight * sum;
    }
    out.values[t] = total;
  }
  return out;
}

std::vector<double> MovingAverage(std::span<const double> values, int width) {
  Require(width >= 1, ErrorKind::kParameter, "smoothing width must be >= 1");
  const long n = static_cast<long>(values.size());
  const long half = width / 2;
  std::vector<double> out(values.size());
  for (long i = 0; i < n; ++i) {
    const long lo = std::max(0L, i - half);
    const long hi = std::min(n - 1, i + half);
    double s = 0.0;
    for (long j = lo; j <= hi; ++j) s += values[j];
    out[i] = s / static_cast<double>(hi - lo + 1);
  }
  return out;
}

void WriteContourCsv(const std::filesystem::path &path,
                     std::span<const double> values, double frame_shift_ms,
                     double time_offset_ms) {
  std::string text = "frame_index,time_ms,value\n";
  char line[96];
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::snprintf(line, sizeof line, "%zu,%.3f,%.9g\n", i,
                  time_offset_ms + static_cast<double>(i) * frame_shift_ms,
                  values[i]);
    text += line;
  }
  WriteFileAtomic(path, text);
}

}  // namespace melhts::signal
