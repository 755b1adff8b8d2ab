// src/hmm/train.hpp

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

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "common/matrix.hpp"
#include "hmm/align.hpp"
#include "hmm/model.hpp"
#include "hmm/tree.hpp"
#include "text/context.hpp"

namespace melhts::hmm {

struct TrainingUtterance {
  std::string id;
  Matrix features;  // T x 3D, [static | delta | delta-delta]
  std::vector<std::string> phones;
};

// ratio times the corpus-wide variance of each feature dimension.
std::vector<double> VarianceFloor(const std::vector<TrainingUtterance> &corpus,
                                  double ratio = 1e-4);

struct FlatStartReport {
  std::vector<std::string> skipped;  // utterances with too few frames
};

/// Divides each utterance equally among its phones and each phone segment
/// equally among the states, then takes moments of the assigned frames.
/// Transitions start uniform (self-loop 0.5). Throws kData if every
/// utterance is too short.
PhoneModels FlatStartInit(const std::vector<TrainingUtterance> &corpus,
                          int num_states, std::span<const double> var_floor,
                          FlatStartReport *report = nullptr);

/// A run of frames trained against a contiguous run of the utterance's
/// phones.
struct Chunk {
  std::size_t utterance = 0;
  std::size_t start_frame = 0;
  std::size_t end_frame = 0;
  std::size_t first_phone = 0;
  std::size_t num_phones = 0;
};

std::vector<Chunk> UtteranceChunks(const std::vector<TrainingUtterance> &corpus);

/// Splits utterance |utterance| into one chunk per group of phones (for
/// example, a syllable). boundary_frames[i] is the first frame of group
/// i + 1. A group with fewer frames than num_states * phones is merged into
/// the following group (the preceding one at the end).
std::vector<Chunk> GroupChunks(std::size_t utterance, std::size_t num_frames,
                               std::span<const std::size_t> group_sizes,
                               std::span<const std::size_t> boundary_frames,
                               int num_states);

struct ReestimateOptions {
  int iterations = 8;
  int workers = 1;
  double min_self_loop = 1e-3;
};

struct ReestimateReport {
  // Total log-likelihood under the model entering each iteration, plus one
  // final entry for the returned model.
  std::vector<double> log_likelihood;
  std::size_t chunks_used = 0;
  std::size_t chunks_skipped = 0;
};

/// Baum-Welch run independently on every chunk; statistics are pooled over
/// the corpus before each update. States without occupancy keep their
/// previous parameters.
PhoneModels EmbeddedReestimate(PhoneModels models,
                               const std::vector<TrainingUtterance> &corpus,
                               const std::vector<Chunk> &chunks,
                               std::span<const double> var_floor,
                               const ReestimateOptions &options,
                               ReestimateReport *report = nullptr);

// Population mean and variance of state occupancies in frames; the variance
// is floored at var_floor frames^2.
DurationModel EstimateDuration(std::span<const double> frames,
                               double var_floor = 1.0);

struct TyingOptions {
  ClusterOptions cluster;
  int workers = 1;
};

/// Fills questions, trees and leaf tables of |model| from Viterbi
/// alignments: frames of each aligned state are pooled by context, every
/// (phone, state) is clustered, and each leaf receives the durations of the
/// occurrences that route to it. |model| must already carry its phone set
/// and variance floor.
void TieStates(const std::vector<TrainingUtterance> &corpus,
               const std::vector<AlignmentResult> &alignments,
               const std::vector<std::vector<text::ContextLabel>> &labels,
               const TyingOptions &options, AcousticModel *model);

}  // namespace melhts::hmm
