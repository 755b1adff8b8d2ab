// src/signal/contours.hpp

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

#include <filesystem>
#include <span>
#include <vector>

#include "common/matrix.hpp"
#include "signal/audio.hpp"
#include "signal/stft.hpp"

namespace melhts::signal {

struct EnergyContour {
  std::vector<double> values;
  double frame_shift_ms = 10.0;
};

struct FluxBand {
  double low_hz = 0.0;
  double high_hz = 0.0;
  double weight = 1.0;
};

struct FluxContour {
  std::vector<double> values;
  std::vector<FluxBand> bands;
  double frame_shift_ms = 10.0;
};

std::vector<FluxBand> DefaultFluxBands();

// value_t = sum of squared windowed samples in frame t.
EnergyContour ShortTermEnergy(const AudioBuffer &audio, const FrameSpec &spec);

// Half-wave rectified frame-to-frame magnitude increase, summed over the
// bins of each band ([low, high) in Hz) and weighted per band. value_0 = 0.
FluxContour SubBandSpectralFlux(const Matrix &stft_magnitude,
                                const std::vector<FluxBand> &bands,
                                const FrameSpec &spec, int sample_rate_hz);

// Centered moving average; the window shrinks at the edges.
std::vector<double> MovingAverage(std::span<const double> values, int width);

// frame_index,time_ms,value
void WriteContourCsv(const std::filesystem::path &path,
                     std::span<const double> values, double frame_shift_ms,
                     double time_offset_ms = 0.0);

}  // namespace melhts::signal
