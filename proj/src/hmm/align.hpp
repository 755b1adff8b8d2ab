// src/hmm/align.hpp

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
#include <string>
#include <vector>

#include "common/matrix.hpp"
#include "hmm/model.hpp"

namespace melhts::hmm {

/// Phone models concatenated into one left-to-right state chain. The path
/// starts in state 0 and must leave the last state after the final frame;
/// that exit transition is part of the path likelihood.
struct StateChain {
  std::vector<const Gaussian *> pdfs;
  std::vector<double> log_stay;
  std::vector<double> log_move;  // last entry is the exit transition
  std::vector<std::size_t> phone_index;
  std::vector<int> state_index;

  std::size_t size() const { return pdfs.size(); }
};

// Throws kData when a phone has no model.
StateChain BuildChain(const PhoneModels &models,
                      std::span<const std::string> phones);

// T x N matrix of per-frame log densities for each chain state.
Matrix EmissionLogLikelihoods(const StateChain &chain, const Matrix &features);

struct PhoneSegment {
  std::string phone;
  std::size_t start_frame = 0;
  std::size_t end_frame = 0;  // exclusive
  std::vector<std::size_t> state_ends;  // exclusive end frame of each state
};

struct AlignmentResult {
  std::vector<PhoneSegment> phones;
  std::vector<std::size_t> state_path;  // chain state per frame
  double log_likelihood = 0.0;
};

// Most likely state path. Throws kAlignment when there are fewer frames
// than chain states.
AlignmentResult ViterbiAlign(const StateChain &chain, const Matrix &features,
                             std::span<const std::string> phones);
AlignmentResult ViterbiAlign(const PhoneModels &models, const Matrix &features,
                             std::span<const std::string> phones);

struct ChainPosteriors {
  double log_likelihood = 0.0;
  Matrix occupancy;             // T x N state posteriors
  std::vector<double> stay;     // expected self-loop count per state
  std::vector<double> move;     // expected forward (or exit) count per state
};

// Log-domain forward-backward over the chain.
ChainPosteriors ForwardBackward(const StateChain &chain,
                                const Matrix &features);

}  // namespace melhts::hmm
