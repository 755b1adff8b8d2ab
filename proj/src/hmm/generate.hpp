// src/hmm/generate.hpp

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

#include "common/matrix.hpp"
#include "hmm/model.hpp"
#include "signal/mel.hpp"
#include "text/context.hpp"

namespace melhts::hmm {

enum class Smoothing { kNone, kMlpg };

struct GenerationOptions {
  double speaking_rate = 1.0;
  Smoothing smoothing = Smoothing::kMlpg;
};

/// Solves A x = b for a symmetric positive definite band matrix stored by
/// rows of its lower band: band(i, k) = A(i, i - k), k = 0..width.
/// Throws kInternal when A is not positive definite.
std::vector<double> SolveBandedSpd(const Matrix &band, std::span<const double> b);

/// Maximum-likelihood trajectory for each static dimension given per-frame
/// means and precisions of [static | delta | delta-delta] (T x 3D each).
/// Solved as a correction to the static means, so zero delta precisions
/// return the static means exactly.
Matrix MlpgSolve(const Matrix &means, const Matrix &precisions,
                 int half_window);

/// Per-frame state sequence for a label sequence: each state lasts
/// max(1, round(duration mean * speaking_rate)) frames.
struct StateSequence {
  std::vector<int> leaves;          // leaf id per state
  std::vector<std::size_t> frames;  // duration per state
};
StateSequence ExpandLabels(const std::vector<text::ContextLabel> &labels,
                           const AcousticModel &model, double speaking_rate);

/// Mel spectrogram for a label sequence. Values are clamped at the model's
/// log floor.
signal::MelSpectrogram GenerateParameters(
    const std::vector<text::ContextLabel> &labels, const AcousticModel &model,
    const GenerationOptions &options);

}  // namespace melhts::hmm
