// src/hmm/generate.cpp

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

#include "hmm/generate.hpp"

#include <algorithm>
#include <cmath>

#include "common/error.hpp"
#include "signal/delta.hpp"

namespace melhts::hmm {

std::vector<double> SolveBandedSpd(const Matrix &band,
                                   std::span<const double> b) {
  const std::size_t n = band.rows();
  const std::size_t w = band.cols() - 1;
  Require(b.size() == n, ErrorKind::kInternal, "band system size mismatch");
  // Cholesky factor in the same layout: L(i, i - k) = l(i, k).
  Matrix l(n, w + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t kmax = std::min(w, i);
    for (std::size_t k = kmax + 1; k-- > 0;) {
      const std::size_t j = i - k;
      double s = band(i, k);
      // sum over m < j of L(i, m) L(j, m), within both bands
      const std::size_t m0 = i >= w ? i - w : 0;
      for (std::size_t m = m0; m < j; ++m) s -= l(i, i - m) * l(j, j - m);
      if (k == 0) {
        Require(s > 0.0, ErrorKind::kInternal,
                "band matrix is not positive definite");
        l(i, 0) = std::sqrt(s);
      } else {
        l(i, k) = s / l(j, 0);
      }
    }
  }
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    const std::size_t m0 = i >= w ? i - w : 0;
    for (std::size_t m = m0; m < i; ++m) s -= l(i, i - m) * y[m];
    y[i] = s / l(i, 0);
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = y[i];
    const std::size_t m1 = std::min(n - 1, i + w);
    for (std::size_t m = i + 1; m <= m1; ++m) s -= l(m, m - i) * x[m];
    x[i] = s / l(i, 0);
  }
  return x;
}

Matrix MlpgSolve(const Matrix &means, const Matrix &precisions,
                 int half_window) {
  Require(means.rows() == precisions.rows() &&
              means.cols() == precisions.cols() && means.cols() % 3 == 0,
          ErrorKind::kParameter,
          "means and precisions must both be T x 3D");
  const std::size_t T = means.rows();
  const std::size_t D = means.cols() / 3;
  Matrix out(T, D);
  if (T == 0) return out;
  const auto op = signal::BuildDeltaOperator(T, half_window);
  const std::size_t width = static_cast<std::size_t>(4 * half_window);

  for (std::size_t d = 0; d < D; ++d) {
    Matrix band(T, width + 1);
    std::vector<double> rhs(T, 0.0);
    for (std::size_t t = 0; t < T; ++t) band(t, 0) += precisions(t, d);

    auto add_stream = [&](const std::vector<signal::SparseRow> &rows,
                          std::size_t offset) {
      for (std::size_t t = 0; t < T; ++t) {
        const double p = precisions(t, offset + d);
        if (p == 0.0) continue;
        double predicted = 0.0;
        for (const auto &[j, w] : rows[t]) predicted += w * means(j, d);
        const double residual = means(t, offset + d) - predicted;
        for (const auto &[i, wi] : rows[t]) {
          rhs[i] += wi * p * residual;
          for (const auto &[j, wj] : rows[t]) {
            if (j > i) continue;
            Require(i - j <= width, ErrorKind::kInternal,
                    "delta window wider than the band");
            band(i, i - j) += wi * p * wj;
          }
        }
      }
    };
    add_stream(op.delta, D);
    add_stream(op.delta2, 2 * D);

    const auto delta = SolveBandedSpd(band, rhs);
    for (std::size_t t = 0; t < T; ++t) out(t, d) = means(t, d) + delta[t];
  }
  return out;
}

StateSequence ExpandLabels(const std::vector<text::ContextLabel> &labels,
                           const AcousticModel &model, double speaking_rate) {
  Require(speaking_rate > 0.0 && std::isfinite(speaking_rate),
          ErrorKind::kParameter, "speaking_rate must be > 0");
  StateSequence seq;
  for (const auto &label : labels) {
    for (int s = 0; s < model.num_states; ++s) {
      const auto *tree = model.FindTree(label.c, s);
      Require(tree != nullptr, ErrorKind::kData,
              "phone '" + label.c + "' has no trained model");
      const int leaf = tree->Route(label, model.questions, model.phone_set);
      Require(leaf >= 0 && static_cast<std::size_t>(leaf) < model.leaf_pdfs.size(),
              ErrorKind::kInternal, "tree routed to a missing leaf");
      const double mean =
          model.leaf_durations[static_cast<std::size_t>(leaf)].mean;
      seq.leaves.push_back(leaf);
      seq.frames.push_back(static_cast<std::size_t>(
          std::max(1.0, std::round(mean * speaking_rate))));
    }
  }
  return seq;
}

signal::MelSpectrogram GenerateParameters(
    const std::vector<text::ContextLabel> &labels, const AcousticModel &model,
    const GenerationOptions &options) {
  Require(!labels.empty(), ErrorKind::kInput, "no labels to synthesize");
  const auto seq = ExpandLabels(labels, model, options.speaking_rate);
  const auto dim = static_cast<std::size_t>(model.feature_dim());
  const auto D = static_cast<std::size_t>(model.static_dim);

  std::size_t T = 0;
  for (auto f : seq.frames) T += f;
  Matrix means(T, dim), precisions(T, dim);
  std::size_t t = 0;
  for (std::size_t i = 0; i < seq.leaves.size(); ++i) {
    const auto &pdf = model.leaf_pdfs[static_cast<std::size_t>(seq.leaves[i])];
    for (std::size_t k = 0; k < seq.frames[i]; ++k, ++t) {
      for (std::size_t d = 0; d < dim; ++d) {
        means(t, d) = pdf.mean[d];
        precisions(t, d) = 1.0 / pdf.var[d];
      }
    }
  }

  signal::MelSpectrogram mel;
  mel.frame_shift_ms = model.frame_shift_ms;
  mel.num_filters = model.num_filters;
  mel.sample_rate_hz = model.sample_rate_hz;
  mel.log_floor = model.log_floor;
  if (options.smoothing == Smoothing::kMlpg) {
    mel.frames = MlpgSolve(means, precisions, model.delta_window);
  } else {
    mel.frames = Matrix(T, D);
    for (std::size_t r = 0; r < T; ++r)
      for (std::size_t d = 0; d < D; ++d) mel.frames(r, d) = means(r, d);
  }
  for (double &v : mel.frames.data()) v = std::max(v, model.log_floor);
  return mel;
}

}  // namespace melhts::hmm
