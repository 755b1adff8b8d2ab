// src/signal/delta.cpp

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

#include "signal/delta.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "common/error.hpp"

namespace melhts::signal {

namespace {

double RegressionNorm(int half_window) {
  double s = 0.0;
  for (int n = 1; n <= half_window; ++n) s += static_cast<double>(n) * n;
  return 2.0 * s;
}

Matrix Regress(const Matrix &in, int half_window) {
  const long frames = static_cast<long>(in.rows());
  const double norm = RegressionNorm(half_window);
  Matrix out(in.rows(), in.cols());
  for (long t = 0; t < frames; ++t) {
    for (int n = 1; n <= half_window; ++n) {
      const auto ahead = static_cast<std::size_t>(std::min(t + n, frames - 1));
      const auto behind = static_cast<std::size_t>(std::max(t - n, 0L));
      for (std::size_t d = 0; d < in.cols(); ++d)
        out(t, d) += n * (in(ahead, d) - in(behind, d));
    }
    for (std::size_t d = 0; d < in.cols(); ++d) out(t, d) /= norm;
  }
  return out;
}

}  // namespace

Matrix DeltaFeatures(const Matrix &features, int half_window) {
  Require(half_window >= 1, ErrorKind::kParameter, "half_window must be >= 1");
  Require(features.rows() >= static_cast<std::size_t>(2 * half_window + 1),
          ErrorKind::kInput,
          "delta_features needs at least " +
              std::to_string(2 * half_window + 1) + " frames, got " +
              std::to_string(features.rows()));
  const Matrix delta = Regress(features, half_window);
  const Matrix delta2 = Regress(delta, half_window);
  const std::size_t dim = features.cols();
  Matrix out(features.rows(), 3 * dim);
  for (std::size_t t = 0; t < features.rows(); ++t) {
    for (std::size_t d = 0; d < dim; ++d) {
      out(t, d) = features(t, d);
      out(t, dim + d) = delta(t, d);
      out(t, 2 * dim + d) = delta2(t, d);
    }
  }
  return out;
}

DeltaOperator BuildDeltaOperator(std::size_t num_frames, int half_window) {
  Require(half_window >= 1, ErrorKind::kParameter, "half_window must be >= 1");
  const long frames = static_cast<long>(num_frames);
  const double norm = RegressionNorm(half_window);
  DeltaOperator op;
  op.delta.resize(num_frames);
  for (long t = 0; t < frames; ++t) {
    std::map<std::size_t, double> acc;
    for (int n = 1; n <= half_window; ++n) {
      acc[static_cast<std::size_t>(std::min(t + n, frames - 1))] += n / norm;
      acc[static_cast<std::size_t>(std::max(t - n, 0L))] -= n / norm;
    }
    for (auto [j, w] : acc)
      if (w != 0.0) op.delta[t].emplace_back(j, w);
  }
  op.delta2.resize(num_frames);
  for (long t = 0; t < frames; ++t) {
    std::map<std::size_t, double> acc;
    for (int n = 1; n <= half_window; ++n) {
      for (auto [j, w] :
           op.delta[static_cast<std::size_t>(std::min(t + n, frames - 1))])
        acc[j] += n / norm * w;
      for (auto [j, w] : op.delta[static_cast<std::size_t>(std::max(t - n, 0L))])
        acc[j] -= n / norm * w;
    }
    for (auto [j, w] : acc)
      if (w != 0.0) op.delta2[t].emplace_back(j, w);
  }
  return op;
}

}  // namespace melhts::signal
