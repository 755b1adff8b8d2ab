// src/hmm/gaussian.cpp

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

#include "hmm/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "common/error.hpp"

namespace melhts::hmm {

namespace {
const double kLog2Pi = std::log(2.0 * std::numbers::pi);
}

double Gaussian::LogDensity(std::span<const double> x) const {
  double s = 0.0;
  for (std::size_t d = 0; d < mean.size(); ++d) {
    const double diff = x[d] - mean[d];
    s += kLog2Pi + std::log(var[d]) + diff * diff / var[d];
  }
  return -0.5 * s;
}

PreparedGaussian::PreparedGaussian(const Gaussian &g)
    : mean_(g.mean.data()), inv_var_(g.var.size()), log_norm_(0.0) {
  for (std::size_t d = 0; d < g.var.size(); ++d) {
    inv_var_[d] = 1.0 / g.var[d];
    log_norm_ += kLog2Pi + std::log(g.var[d]);
  }
  log_norm_ *= -0.5;
}

double PreparedGaussian::LogDensity(std::span<const double> x) const {
  double s = 0.0;
  for (std::size_t d = 0; d < inv_var_.size(); ++d) {
    const double diff = x[d] - mean_[d];
    s += diff * diff * inv_var_[d];
  }
  return log_norm_ - 0.5 * s;
}

void GaussianStats::Add(std::span<const double> x, double weight) {
  if (sum.empty()) {
    sum.assign(x.size(), 0.0);
    sum_sq.assign(x.size(), 0.0);
  }
  occupancy += weight;
  for (std::size_t d = 0; d < x.size(); ++d) {
    sum[d] += weight * x[d];
    sum_sq[d] += weight * x[d] * x[d];
  }
}

void GaussianStats::Merge(const GaussianStats &other) {
  if (other.sum.empty()) return;
  if (sum.empty()) {
    sum.assign(other.sum.size(), 0.0);
    sum_sq.assign(other.sum.size(), 0.0);
  }
  occupancy += other.occupancy;
  for (std::size_t d = 0; d < sum.size(); ++d) {
    sum[d] += other.sum[d];
    sum_sq[d] += other.sum_sq[d];
  }
}

std::vector<double> GaussianStats::Mean() const {
  std::vector<double> m(sum.size(), 0.0);
  if (occupancy <= 0.0) return m;
  for (std::size_t d = 0; d < sum.size(); ++d) m[d] = sum[d] / occupancy;
  return m;
}

std::vector<double> GaussianStats::Variance(
    std::span<const double> floor) const {
  std::vector<double> v(sum.size(), 0.0);
  for (std::size_t d = 0; d < sum.size(); ++d) {
    double var = 0.0;
    if (occupancy > 0.0) {
      const double m = sum[d] / occupancy;
      var = sum_sq[d] / occupancy - m * m;
    }
    v[d] = std::max(var, floor.empty() ? 0.0 : floor[d]);
  }
  return v;
}

Gaussian GaussianStats::Estimate(std::span<const double> floor) const {
  Require(occupancy > 0.0, ErrorKind::kInternal,
          "cannot estimate a Gaussian from zero occupancy");
  return Gaussian{Mean(), Variance(floor)};
}

double GaussianStats::LogLikelihood(std::span<const double> floor) const {
  if (occupancy <= 0.0) return 0.0;
  double s = 0.0;
  for (std::size_t d = 0; d < sum.size(); ++d) {
    const double m = sum[d] / occupancy;
    const double ml_var = std::max(sum_sq[d] / occupancy - m * m, 0.0);
    const double v = std::max(ml_var, floor[d]);
    s += kLog2Pi + std::log(v) + ml_var / v;
  }
  return -0.5 * occupancy * s;
}

}  // namespace melhts::hmm
