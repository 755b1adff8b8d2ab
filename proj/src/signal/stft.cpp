// src/signal/stft.cpp

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

#include "signal/stft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "common/error.hpp"

namespace melhts::signal {

std::size_t FrameSpec::LengthSamples(int sample_rate_hz) const {
  return static_cast<std::size_t>(
      std::lround(frame_length_ms * sample_rate_hz / 1000.0));
}

std::size_t FrameSpec::ShiftSamples(int sample_rate_hz) const {
  return static_cast<std::size_t>(
      std::lround(frame_shift_ms * sample_rate_hz / 1000.0));
}

std::size_t FrameSpec::NumFrames(std::size_t num_samples,
                                 int sample_rate_hz) const {
  const std::size_t len = LengthSamples(sample_rate_hz);
  const std::size_t shift = ShiftSamples(sample_rate_hz);
  if (num_samples < len || shift == 0) return 0;
  return 1 + (num_samples - len) / shift;
}

void ValidateFrameSpec(const FrameSpec &spec, int sample_rate_hz) {
  Require(spec.frame_length_ms > 0.0, ErrorKind::kParameter,
          "frame_length_ms must be positive");
  Require(spec.frame_shift_ms > 0.0 &&
              spec.frame_shift_ms <= spec.frame_length_ms,
          ErrorKind::kParameter,
          "frame_shift_ms must be in (0, frame_length_ms]");
  Require(spec.fft_size > 0 && (spec.fft_size & (spec.fft_size - 1)) == 0,
          ErrorKind::kParameter, "fft_size must be a power of two");
  Require(spec.ShiftSamples(sample_rate_hz) >= 1, ErrorKind::kParameter,
          "frame_shift_ms is shorter than one sample");
  Require(static_cast<std::size_t>(spec.fft_size) >=
              spec.LengthSamples(sample_rate_hz),
          ErrorKind::kParameter,
          "fft_size " + std::to_string(spec.fft_size) +
              " is smaller than the frame length in samples (" +
              std::to_string(spec.LengthSamples(sample_rate_hz)) + ")");
}

std::vector<double> MakeWindow(WindowType type, std::size_t length) {
  std::vector<double> w(length, 1.0);
  const double n = static_cast<double>(length);
  for (std::size_t i = 0; i < length; ++i) {
    const double phase = 2.0 * std::numbers::pi * static_cast<double>(i) / n;
    switch (type) {
      case WindowType::kHann:
        w[i] = 0.5 - 0.5 * std::cos(phase);
        break;
      case WindowType::kHamming:
        w[i] = 0.54 - 0.46 * std::cos(phase);
        break;
      case WindowType::kRect:
        break;
    }
  }
  return w;
}

namespace {
// The FFTW planner is not reentrant.
std::mutex &PlannerMutex() {
  static std::mutex m;
  return m;
}
}  // namespace

RealFft::RealFft(int size) : size_(size) {
  Require(size > 0 && (size & (size - 1)) == 0, ErrorKind::kParameter,
          "fft size must be a power of two");
  std::lock_guard<std::mutex> lock(PlannerMutex());
  real_ = fftw_alloc_real(static_cast<std::size_t>(size));
  auto *cplx = fftw_alloc_complex(static_cast<std::size_t>(bins()));
  complex_ = cplx;
  forward_plan_ = fftw_plan_dft_r2c_1d(size, real_, cplx, FFTW_ESTIMATE);
  inverse_plan_ = fftw_plan_dft_c2r_1d(size, cplx, real_, FFTW_ESTIMATE);
}

RealFft::~RealFft() {
  std::lock_guard<std::mutex> lock(PlannerMutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
  fftw_free(real_);
  fftw_free(complex_);
}

void RealFft::Forward(std::span<const double> input,
                      std::vector<std::complex<double>> &out) {
  Require(input.size() <= static_cast<std::size_t>(size_),
          ErrorKind::kInternal, "fft input longer than transform size");
  std::size_t i = 0;
  for (; i < input.size(); ++i) real_[i] = input[i];
  for (; i < static_cast<std::size_t>(size_); ++i) real_[i] = 0.0;
  fftw_execute(static_cast<fftw_plan>(forward_plan_));
  auto *c = static_cast<fftw_complex *>(complex_);
  out.resize(static_cast<std::size_t>(bins()));
  for (int k = 0; k < bins(); ++k) out[k] = {c[k][0], c[k][1]};
}

void RealFft::Inverse(std::span<const std::complex<double>> input,
                      std::vector<double> &out) {
  Require(input.size() == static_cast<std::size_t>(bins()),
          ErrorKind::kInternal, "inverse fft expects size/2+1 bins");
  auto *c = static_cast<fftw_complex *>(complex_);
  for (int k = 0; k < bins(); ++k) {
    c[k][0] = input[k].real();
    c[k][1] = input[k].imag();
  }
  // A real signal has real DC and Nyquist bins.
  c[0][1] = 0.0;
  c[bins() - 1][1] = 0.0;
  fftw_execute(static_cast<fftw_plan>(inverse_plan_));
  out.resize(static_cast<std::size_t>(size_));
  const double scale = 1.0 / size_;
  for (int i = 0; i < size_; ++i) out[i] = real_[i] * scale;
}

RealFft &FftForSize(int size) {
  thread_local std::map<int, std::unique_ptr<RealFft>> cache;
  auto &slot = cache[size];
  if (!slot) slot = std::make_unique<RealFft>(size);
  return *slot;
}

ComplexFrames Stft(const AudioBuffer &audio, const FrameSpec &spec) {
  ValidateFrameSpec(spec, audio.sample_rate_hz);
  const std::size_t len = spec.LengthSamples(audio.sample_rate_hz);
  const std::size_t shift = spec.ShiftSamples(audio.sample_rate_hz);
  const std::size_t frames =
      spec.NumFrames(audio.samples.size(), audio.sample_rate_hz);
  Require(frames > 0, ErrorKind::kInput,
          "audio (" + std::to_string(audio.samples.size()) +
              " samples) is shorter than one frame (" + std::to_string(len) +
              " samples)");
  const auto window = MakeWindow(spec.window, len);
  auto &fft = FftForSize(spec.fft_size);
  ComplexFrames out(frames);
  std::vector<double> buf(len);
  for (std::size_t t = 0; t < frames; ++t) {
    const double *src = audio.samples.data() + t * shift;
    for (std::size_t i = 0; i < len; ++i) buf[i] = src[i] * window[i];
    fft.Forward(buf, out[t]);
  }
  return out;
}

Matrix Magnitude(const ComplexFrames &frames) {
  Matrix out(frames.size(), frames.empty() ? 0 : frames[0].size());
  for (std::size_t t = 0; t < frames.size(); ++t)
    for (std::size_t k = 0; k < frames[t].size(); ++k)
      out(t, k) = std::abs(frames[t][k]);
  return out;
}

std::vector<double> Istft(const ComplexFrames &frames, const FrameSpec &spec,
                          int sample_rate_hz, std::size_t num_samples) {
  ValidateFrameSpec(spec, sample_rate_hz);
  const std::size_t len = spec.LengthSamples(sample_rate_hz);
  const std::size_t shift = spec.ShiftSamples(sample_rate_hz);
  const auto window = MakeWindow(spec.window, len);
  auto &fft = FftForSize(spec.fft_size);
  std::vector<double> out(num_samples, 0.0), norm(num_samples, 0.0);
  std::vector<double> buf;
  for (std::size_t t = 0; t < frames.size(); ++t) {
    fft.Inverse(frames[t], buf);
    const std::size_t start = t * shift;
    for (std::size_t i = 0; i < len && start + i < num_samples; ++i) {
      out[start + i] += buf[i] * window[i];
      norm[start + i] += window[i] * window[i];
    }
  }
  for (std::size_t i = 0; i < num_samples; ++i)
    out[i] = norm[i] > 1e-12 ? out[i] / norm[i] : 0.0;
  return out;
}

}  // namespace melhts::signal
