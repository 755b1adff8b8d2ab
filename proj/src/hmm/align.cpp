// src/hmm/align.cpp

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

#include "hmm/align.hpp"

#include <cmath>
#include <limits>
#include <unordered_map>

#include "common/error.hpp"

namespace melhts::hmm {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double LogAdd(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

void CheckFeasible(const StateChain &chain, const Matrix &features) {
  Require(chain.size() > 0, ErrorKind::kAlignment, "empty state chain");
  Require(features.rows() >= chain.size(), ErrorKind::kAlignment,
          "no feasible path: " + std::to_string(features.rows()) +
              " frames for " + std::to_string(chain.size()) + " states");
  Require(features.cols() == chain.pdfs[0]->dim(), ErrorKind::kInput,
          "feature dimension " + std::to_string(features.cols()) +
              " does not match the model (" +
              std::to_string(chain.pdfs[0]->dim()) + ")");
}

}  // namespace

StateChain BuildChain(const PhoneModels &models,
                      std::span<const std::string> phones) {
  StateChain chain;
  for (std::size_t p = 0; p < phones.size(); ++p) {
    auto it = models.find(phones[p]);
    Require(it != models.end(), ErrorKind::kData,
            "no model for phone '" + phones[p] + "'");
    const auto &hmm = it->second;
    for (std::size_t s = 0; s < hmm.states.size(); ++s) {
      chain.pdfs.push_back(&hmm.states[s].pdf);
      chain.log_stay.push_back(std::log(hmm.self_loop[s]));
      chain.log_move.push_back(std::log1p(-hmm.self_loop[s]));
      chain.phone_index.push_back(p);
      chain.state_index.push_back(static_cast<int>(s));
    }
  }
  return chain;
}

Matrix EmissionLogLikelihoods(const StateChain &chain, const Matrix &features) {
  const std::size_t n = chain.size();
  Matrix e(features.rows(), n);
  std::unordered_map<const Gaussian *, std::size_t> first;
  std::vector<PreparedGaussian> prepared;
  std::vector<std::size_t> column(n);
  for (std::size_t j = 0; j < n; ++j) {
    auto [it, inserted] = first.emplace(chain.pdfs[j], prepared.size());
    if (inserted) prepared.emplace_back(*chain.pdfs[j]);
    column[j] = it->second;
  }
  std::vector<double> cache(prepared.size());
  for (std::size_t t = 0; t < features.rows(); ++t) {
    const auto x = features.row(t);
    for (std::size_t k = 0; k < prepared.size(); ++k)
      cache[k] = prepared[k].LogDensity(x);
    for (std::size_t j = 0; j < n; ++j) e(t, j) = cache[column[j]];
  }
  return e;
}

AlignmentResult ViterbiAlign(const StateChain &chain, const Matrix &features,
                             std::span<const std::string> phones) {
  CheckFeasible(chain, features);
  const std::size_t T = features.rows();
  const std::size_t N = chain.size();
  const Matrix e = EmissionLogLikelihoods(chain, features);

  // Only states j with j <= t and N-1-j <= T-1-t are reachable and can
  // still finish.
  std::vector<double> prev(N, kNegInf), cur(N, kNegInf);
  std::vector<unsigned char> moved(T * N, 0);
  prev[0] = e(0, 0);
  for (std::size_t t = 1; t < T; ++t) {
    const std::size_t lo = N > T - t ? N - (T - t) : 0;
    const std::size_t hi = std::min(t, N - 1);
    std::fill(cur.begin(), cur.end(), kNegInf);
    for (std::size_t j = lo; j <= hi; ++j) {
      double stay = prev[j] + chain.log_stay[j];
      double move = j > 0 ? prev[j - 1] + chain.log_move[j - 1] : kNegInf;
      // Ties keep the self-loop.
      if (move > stay) {
        cur[j] = move + e(t, j);
        moved[t * N + j] = 1;
      } else {
        cur[j] = stay + e(t, j);
      }
    }
    std::swap(prev, cur);
  }

  AlignmentResult result;
  result.log_likelihood = prev[N - 1] + chain.log_move[N - 1];
  Require(std::isfinite(result.log_likelihood), ErrorKind::kAlignment,
          "no finite-likelihood path");
  result.state_path.assign(T, 0);
  std::size_t j = N - 1;
  for (std::size_t t = T; t-- > 0;) {
    result.state_path[t] = j;
    if (t > 0 && moved[t * N + j]) --j;
  }

  std::size_t num_phones = phones.size();
  result.phones.resize(num_phones);
  for (std::size_t p = 0; p < num_phones; ++p) {
    result.phones[p].phone = phones[p];
    result.phones[p].start_frame = T;
  }
  for (std::size_t t = 0; t < T; ++t) {
    const std::size_t s = result.state_path[t];
    auto &seg = result.phones[chain.phone_index[s]];
    seg.start_frame = std::min(seg.start_frame, t);
    seg.end_frame = t + 1;
    const auto k = static_cast<std::size_t>(chain.state_index[s]);
    if (seg.state_ends.size() <= k) seg.state_ends.resize(k + 1, 0);
    seg.state_ends[k] = t + 1;
  }
  return result;
}

AlignmentResult ViterbiAlign(const PhoneModels &models, const Matrix &features,
                             std::span<const std::string> phones) {
  return ViterbiAlign(BuildChain(models, phones), features, phones);
}

ChainPosteriors ForwardBackward(const StateChain &chain,
                                const Matrix &features) {
  CheckFeasible(chain, features);
  const std::size_t T = features.rows();
  const std::size_t N = chain.size();
  const Matrix e = EmissionLogLikelihoods(chain, features);

  Matrix alpha(T, N, kNegInf), beta(T, N, kNegInf);
  alpha(0, 0) = e(0, 0);
  for (std::size_t t = 1; t < T; ++t) {
    for (std::size_t j = 0; j < N && j <= t; ++j) {
      double a = alpha(t - 1, j) + chain.log_stay[j];
      if (j > 0) a = LogAdd(a, alpha(t - 1, j - 1) + chain.log_move[j - 1]);
      alpha(t, j) = a == kNegInf ? kNegInf : a + e(t, j);
    }
  }
  beta(T - 1, N - 1) = chain.log_move[N - 1];
  for (std::size_t t = T - 1; t-- > 0;) {
    for (std::size_t j = 0; j < N; ++j) {
      double b = chain.log_stay[j] + e(t + 1, j) + beta(t + 1, j);
      if (j + 1 < N)
        b = LogAdd(b, chain.log_move[j] + e(t + 1, j + 1) + beta(t + 1, j + 1));
      beta(t, j) = b;
    }
  }

  ChainPosteriors post;
  post.log_likelihood = alpha(T - 1, N - 1) + chain.log_move[N - 1];
  Require(std::isfinite(post.log_likelihood), ErrorKind::kAlignment,
          "no finite-likelihood path");
  const double ll = post.log_likelihood;
  post.occupancy = Matrix(T, N);
  post.stay.assign(N, 0.0);
  post.move.assign(N, 0.0);
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t j = 0; j < N; ++j) {
      const double a = alpha(t, j);
      if (a == kNegInf) continue;
      post.occupancy(t, j) = std::exp(a + beta(t, j) - ll);
      if (t + 1 < T) {
        post.stay[j] +=
            std::exp(a + chain.log_stay[j] + e(t + 1, j) + beta(t + 1, j) - ll);
        if (j + 1 < N)
          post.move[j] += std::exp(a + chain.log_move[j] + e(t + 1, j + 1) +
                                   beta(t + 1, j + 1) - ll);
      }
    }
  }
  post.move[N - 1] += 1.0;
  return post;
}

}  // namespace melhts::hmm
