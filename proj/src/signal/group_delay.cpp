// src/signal/group_delay.cpp

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

#include "signal/group_delay.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "common/error.hpp"

namespace melhts::signal {

namespace {
// GD values are in frames; anything below this is rounding noise.
constexpr double kGdNoise = 1e-9;
}  // namespace

GdFunction MinPhaseGroupDelay(std::span<const double> contour,
                              double frame_shift_ms,
                              const GroupDelayOptions &options) {
  const std::size_t n = contour.size();
  Require(n >= 8, ErrorKind::kInput,
          "group delay needs a contour of at least 8 frames, got " +
              std::to_string(n));
  Require(options.wsf >= 1, ErrorKind::kParameter, "wsf must be >= 1");
  Require(options.floor_ratio > 0.0 && options.floor_ratio < 1.0,
          ErrorKind::kParameter, "floor_ratio must be in (0, 1)");

  GdFunction gd;
  gd.wsf = options.wsf;
  gd.frame_shift_ms = frame_shift_ms;
  gd.values.assign(n, 0.0);

  double peak = 0.0;
  for (double v : contour) {
    Require(std::isfinite(v), ErrorKind::kInput, "contour is not finite");
    peak = std::max(peak, v);
  }
  if (peak <= 0.0) return gd;
  const double floor = peak * options.floor_ratio;
  std::vector<double> logmag(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = std::log(std::max(contour[i], floor) / peak);
    logmag[i] = options.invert ? -v : v;
  }
  const auto [lo, hi] = std::minmax_element(logmag.begin(), logmag.end());
  if (*hi - *lo <= 1e-12) return gd;
  double mean = 0.0;
  for (double v : logmag) mean += v;
  mean /= static_cast<double>(n);
  for (double &v : logmag) v -= mean;

  // Cepstrum of the even extension (period 2N, mirrored about k = N), folded
  // onto its causal half and truncated.
  const std::size_t keep = std::max<std::size_t>(2, n / options.wsf);
  const double period = 2.0 * static_cast<double>(n);
  std::vector<double> ceps(keep, 0.0);
  for (std::size_t q = 1; q < keep; ++q) {
    double s = logmag[0] + (q % 2 == 0 ? 1.0 : -1.0) * logmag[n - 1];
    for (std::size_t k = 1; k < n; ++k)
      s += 2.0 * logmag[k] *
           std::cos(2.0 * std::numbers::pi * static_cast<double>(k * q) / period);
    ceps[q] = 2.0 * s / period;
  }

  for (std::size_t k = 0; k < n; ++k) {
    const double w = std::numbers::pi * static_cast<double>(k) / n;
    double tau = 0.0;
    for (std::size_t q = 1; q < keep; ++q)
      tau += static_cast<double>(q) * ceps[q] * std::cos(w * static_cast<double>(q));
    gd.values[k] = tau;
  }
  return gd;
}

seg::BoundarySet PickPeaks(const GdFunction &gd, double min_separation_ms,
                           double threshold_ratio) {
  Require(threshold_ratio > 0.0 && threshold_ratio <= 1.0,
          ErrorKind::kParameter, "threshold_ratio must be in (0, 1]");
  Require(min_separation_ms >= 0.0, ErrorKind::kParameter,
          "min_separation_ms must be >= 0");
  seg::BoundarySet out;
  const std::size_t n = gd.values.size();
  out.utterance_duration_ms =
      gd.time_offset_ms + static_cast<double>(n) * gd.frame_shift_ms;
  if (n < 3) return out;
  const double top = *std::max_element(gd.values.begin(), gd.values.end());
  if (top <= kGdNoise) return out;
  const double threshold = threshold_ratio * top;

  std::vector<std::size_t> candidates;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double v = gd.values[i];
    if (v > gd.values[i - 1] && v >= gd.values[i + 1] && v >= threshold)
      candidates.push_back(i);
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](std::size_t a, std::size_t b) {
                     return gd.values[a] > gd.values[b];
                   });
  std::vector<std::size_t> kept;
  for (std::size_t c : candidates) {
    const bool clear = std::all_of(kept.begin(), kept.end(), [&](std::size_t k) {
      const double gap =
          std::abs(static_cast<double>(c) - static_cast<double>(k)) *
          gd.frame_shift_ms;
      return gap >= min_separation_ms;
    });
    if (clear) kept.push_back(c);
  }
  std::sort(kept.begin(), kept.end());
  for (std::size_t i : kept) {
    seg::Boundary b;
    b.time_ms = gd.time_offset_ms + static_cast<double>(i) * gd.frame_shift_ms;
    b.source = seg::BoundarySource::kGd;
    out.boundaries.push_back(b);
  }
  return out;
}

}  // namespace melhts::signal
