// src/signal/stft.hpp

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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "common/matrix.hpp"
#include "signal/audio.hpp"

namespace melhts::signal {

enum class WindowType { kHann, kHamming, kRect };

struct FrameSpec {
  double frame_length_ms = 25.0;
  double frame_shift_ms = 10.0;
  WindowType window = WindowType::kHann;
  int fft_size = 1024;

  std::size_t LengthSamples(int sample_rate_hz) const;
  std::size_t ShiftSamples(int sample_rate_hz) const;
  // 1 + floor((len - frame_len) / shift); zero when the audio is shorter
  // than one frame.
  std::size_t NumFrames(std::size_t num_samples, int sample_rate_hz) const;
};

// Throws kParameter naming the offending field.
void ValidateFrameSpec(const FrameSpec &spec, int sample_rate_hz);

// Periodic windows so that hop-aligned overlap-add is well conditioned.
std::vector<double> MakeWindow(WindowType type, std::size_t length);

/// Real-input FFT of a fixed power-of-two size backed by FFTW. Instances are
/// not shareable across threads; use FftForSize() for a per-thread cache.
class RealFft {
 public:
  explicit RealFft(int size);
  ~RealFft();
  RealFft(const RealFft &) = delete;
  RealFft &operator=(const RealFft &) = delete;

  int size() const { return size_; }
  int bins() const { return size_ / 2 + 1; }

  // |input| is zero-padded (or must not exceed) size().
  void Forward(std::span<const double> input,
               std::vector<std::complex<double>> &out);
  // Inverse including the 1/size scaling; |out| receives size() samples.
  void Inverse(std::span<const std::complex<double>> input,
               std::vector<double> &out);

 private:
  int size_;
  double *real_ = nullptr;
  void *complex_ = nullptr;
  void *forward_plan_ = nullptr;
  void *inverse_plan_ = nullptr;
};

RealFft &FftForSize(int size);

using ComplexFrames = std::vector<std::vector<std::complex<double>>>;

// Frames start at t * shift, no centering or padding of the signal.
ComplexFrames Stft(const AudioBuffer &audio, const FrameSpec &spec);

Matrix Magnitude(const ComplexFrames &frames);

// Least-squares inverse STFT: weighted overlap-add divided by the summed
// squared window. Samples no frame covers come out as zero.
std::vector<double> Istft(const ComplexFrames &frames, const FrameSpec &spec,
                          int sample_rate_hz, std::size_t num_samples);

}  // namespace melhts::signal
