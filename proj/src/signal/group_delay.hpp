// src/signal/group_delay.hpp

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

#include <span>
#include <vector>

#include "segment/boundary.hpp"

namespace melhts::signal {

struct GdFunction {
  std::vector<double> values;
  int wsf = 8;
  double frame_shift_ms = 10.0;
  // Time of frame 0, e.g. half a frame when frames are reported at their
  // centers.
  double time_offset_ms = 0.0;
};

struct GroupDelayOptions {
  int wsf = 8;
  // Reciprocal of the contour, so that valleys (boundaries) become peaks.
  bool invert = false;
  // Values below floor_ratio * max(contour) are raised to that level.
  double floor_ratio = 1e-6;
};

/// Minimum-phase group delay of a 1-D contour treated as a magnitude
/// spectrum over [0, pi). Peaks of the result mark peaks of the contour (or
/// valleys, with |invert|). Output has the contour's length.
///
/// Steps: floor the contour, optionally take its reciprocal, take the log
/// and remove its mean, mirror into an even sequence of period 2N,
/// inverse-DFT to the cepstrum, fold the causal half (c(n) -> 2c(n), n > 0)
/// and keep the first N/wsf coefficients. That truncated causal cepstrum
/// defines a minimum-phase spectrum whose group delay at w_k = pi k / N is
/// sum_n n c(n) cos(n w_k).
GdFunction MinPhaseGroupDelay(std::span<const double> contour,
                              double frame_shift_ms,
                              const GroupDelayOptions &options);

// Local maxima above threshold_ratio * max(gd), greedily thinned from the
// largest down so that kept peaks are >= min_separation_ms apart, returned
// in time order and tagged GD.
seg::BoundarySet PickPeaks(const GdFunction &gd, double min_separation_ms,
                           double threshold_ratio);

}  // namespace melhts::signal
