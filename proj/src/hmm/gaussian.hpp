// src/hmm/gaussian.hpp

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

namespace melhts::hmm {

/// Diagonal-covariance Gaussian.
struct Gaussian {
  std::vector<double> mean;
  std::vector<double> var;

  std::size_t dim() const { return mean.size(); }
  double LogDensity(std::span<const double> x) const;
  friend bool operator==(const Gaussian &, const Gaussian &) = default;
};

// Gaussian with the normalizer and inverse variances precomputed, for the
// inner loops of alignment.
class PreparedGaussian {
 public:
  explicit PreparedGaussian(const Gaussian &g);
  double LogDensity(std::span<const double> x) const;

 private:
  const double *mean_;
  std::vector<double> inv_var_;
  double log_norm_;
};

/// Zeroth, first and second order statistics of weighted frames.
struct GaussianStats {
  double occupancy = 0.0;
  std::vector<double> sum;
  std::vector<double> sum_sq;

  GaussianStats() = default;
  explicit GaussianStats(std::size_t dim) : sum(dim, 0.0), sum_sq(dim, 0.0) {}

  void Add(std::span<const double> x, double weight = 1.0);
  void Merge(const GaussianStats &other);

  std::vector<double> Mean() const;
  // Population variance, raised to |floor| per dimension.
  std::vector<double> Variance(std::span<const double> floor) const;
  // Requires occupancy > 0.
  Gaussian Estimate(std::span<const double> floor) const;
  // Log-likelihood of the accumulated frames under their own floored ML
  // Gaussian.
  double LogLikelihood(std::span<const double> floor) const;
};

}  // namespace melhts::hmm
