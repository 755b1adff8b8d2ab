// src/vocoder/vocoder.cpp

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

#include "vocoder/vocoder.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "common/error.hpp"

namespace melhts::vocoder {

namespace {

double Distance(const Matrix &a, const Matrix &b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    const double d = a.data()[i] - b.data()[i];
    s += d * d;
  }
  return std::sqrt(s);
}

double Norm(const Matrix &a) {
  double s = 0.0;
  for (double v : a.data()) s += v * v;
  return std::sqrt(s);
}

std::size_t NumSamples(std::size_t frames, const signal::FrameSpec &spec,
                       int rate) {
  if (frames == 0) return 0;
  return (frames - 1) * spec.ShiftSamples(rate) + spec.LengthSamples(rate);
}

}  // namespace

Matrix MelToLinear(const signal::MelSpectrogram &mel,
                   const signal::MelFilterbank &fb) {
  const auto bins = static_cast<Eigen::Index>(fb.weights.cols());
  const auto filters = static_cast<Eigen::Index>(fb.weights.rows());
  Require(mel.frames.cols() == fb.weights.rows(), ErrorKind::kParameter,
          "mel has " + std::to_string(mel.frames.cols()) +
              " coefficients but the filterbank has " + std::to_string(filters));
  Eigen::MatrixXd w(filters, bins);
  for (Eigen::Index m = 0; m < filters; ++m)
    for (Eigen::Index k = 0; k < bins; ++k)
      w(m, k) = fb.weights(static_cast<std::size_t>(m), static_cast<std::size_t>(k));
  const Eigen::MatrixXd pinv = w.completeOrthogonalDecomposition().pseudoInverse();

  Matrix out(mel.frames.rows(), fb.weights.cols());
  Eigen::VectorXd power(filters);
  for (std::size_t t = 0; t < mel.frames.rows(); ++t) {
    for (Eigen::Index m = 0; m < filters; ++m)
      power(m) = std::exp(mel.frames(t, static_cast<std::size_t>(m)));
    const Eigen::VectorXd lin = pinv * power;
    for (Eigen::Index k = 0; k < bins; ++k)
      out(t, static_cast<std::size_t>(k)) = std::sqrt(std::max(lin(k), 0.0));
  }
  return out;
}

double SpectralConvergence(const signal::AudioBuffer &audio,
                           const Matrix &magnitude,
                           const signal::FrameSpec &spec) {
  const Matrix got = signal::Magnitude(signal::Stft(audio, spec));
  Require(got.rows() == magnitude.rows() && got.cols() == magnitude.cols(),
          ErrorKind::kParameter, "signal does not match the magnitude frames");
  const double norm = Norm(magnitude);
  return norm > 0.0 ? Distance(got, magnitude) / norm : 0.0;
}

signal::AudioBuffer GriffinLim(const Matrix &magnitude,
                               const signal::FrameSpec &spec,
                               int sample_rate_hz,
                               const GriffinLimOptions &options) {
  Require(options.iterations >= 0, ErrorKind::kParameter,
          "iterations must be >= 0");
  signal::ValidateFrameSpec(spec, sample_rate_hz);
  const std::size_t bins = static_cast<std::size_t>(spec.fft_size / 2 + 1);
  Require(magnitude.cols() == bins, ErrorKind::kParameter,
          "magnitude has " + std::to_string(magnitude.cols()) +
              " bins, expected " + std::to_string(bins));
  for (double v : magnitude.data())
    Require(std::isfinite(v) && v >= 0.0, ErrorKind::kInput,
            "magnitude must be finite and nonnegative");

  const std::size_t T = magnitude.rows();
  signal::AudioBuffer out;
  out.sample_rate_hz = sample_rate_hz;
  const std::size_t n = NumSamples(T, spec, sample_rate_hz);

  signal::ComplexFrames c(T, std::vector<std::complex<double>>(bins));
  std::mt19937 rng(options.seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  for (std::size_t t = 0; t < T; ++t)
    for (std::size_t k = 0; k < bins; ++k)
      c[t][k] = options.iterations == 0
                    ? std::complex<double>(magnitude(t, k), 0.0)
                    : std::polar(magnitude(t, k), phase(rng));

  const double norm = Norm(magnitude);
  for (int it = 0;; ++it) {
    out.samples = signal::Istft(c, spec, sample_rate_hz, n);
    const bool last = it == options.iterations;
    if (last && !options.observer) break;
    const auto s = signal::Stft(out, spec);
    if (options.observer) {
      double err = 0.0;
      for (std::size_t t = 0; t < T; ++t)
        for (std::size_t k = 0; k < bins; ++k) {
          const double d = std::abs(s[t][k]) - magnitude(t, k);
          err += d * d;
        }
      options.observer(it, norm > 0.0 ? std::sqrt(err) / norm : 0.0);
    }
    if (last) break;
    for (std::size_t t = 0; t < T; ++t)
      for (std::size_t k = 0; k < bins; ++k) {
        const double a = std::abs(s[t][k]);
        c[t][k] = a > 0.0 ? s[t][k] * (magnitude(t, k) / a)
                          : std::complex<double>(magnitude(t, k), 0.0);
      }
  }
  return out;
}

double MelL1(const signal::MelSpectrogram &a, const signal::MelSpectrogram &b) {
  Require(a.frames.rows() == b.frames.rows() &&
              a.frames.cols() == b.frames.cols(),
          ErrorKind::kParameter,
          "mel shapes differ: " + std::to_string(a.frames.rows()) + "x" +
              std::to_string(a.frames.cols()) + " vs " +
              std::to_string(b.frames.rows()) + "x" +
              std::to_string(b.frames.cols()));
  Require(!a.frames.empty(), ErrorKind::kParameter, "empty mel spectrograms");
  double s = 0.0;
  for (std::size_t i = 0; i < a.frames.data().size(); ++i)
    s += std::abs(a.frames.data()[i] - b.frames.data()[i]);
  return s / static_cast<double>(a.frames.data().size());
}

}  // namespace melhts::vocoder
