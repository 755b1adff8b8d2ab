// src/segment/hybrid.hpp

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

#include <vector>

#include "segment/boundary.hpp"
#include "segment/rules.hpp"
#include "signal/audio.hpp"
#include "signal/contours.hpp"
#include "signal/group_delay.hpp"
#include "signal/stft.hpp"
#include "text/syllable.hpp"

namespace melhts::seg {

struct SegmentParams {
  signal::FrameSpec ste_frames{20.0, 10.0, signal::WindowType::kHann, 1024};
  signal::FrameSpec flux_frames{25.0, 10.0, signal::WindowType::kHann, 1024};
  std::vector<signal::FluxBand> flux_bands = signal::DefaultFluxBands();
  int smoothing_width = 5;
  signal::GroupDelayOptions gd{.wsf = 4};
  double threshold_ratio = 0.1;
  double min_separation_ms = 60.0;
  double snap_window_ms = 80.0;
};

// Nearest candidate within +-window_ms of hmm_time_ms (ties go to the
// earlier candidate); hmm_time_ms itself when none qualifies.
double SnapBoundary(double hmm_time_ms, const BoundarySet &candidates,
                    double window_ms);

/// Smoothed contours, their group-delay functions and the picked candidate
/// boundaries for one utterance.
struct SegmentationEvidence {
  signal::EnergyContour ste;
  signal::FluxContour flux;
  signal::GdFunction ste_gd;
  signal::GdFunction flux_gd;
  BoundarySet ste_candidates;
  BoundarySet flux_candidates;
};

SegmentationEvidence ComputeEvidence(const signal::AudioBuffer &audio,
                                     const SegmentParams &params);

struct CorrectionRecord {
  double hmm_time_ms = 0.0;
  double time_ms = 0.0;
  CorrectionMethod method = CorrectionMethod::kKeep;
  BoundarySource source = BoundarySource::kHmm;
  bool reverted = false;  // snap undone to keep the set ordered
};

// Applies the rule table to every syllable transition and snaps the HMM
// boundary onto the matching candidate set. |hmm_bounds| must hold exactly
// one boundary per transition. Output keeps the count and order.
BoundarySet CorrectBoundaries(const std::vector<text::Syllable> &syllables,
                              const text::PhoneSet &phone_set,
                              const BoundarySet &hmm_bounds,
                              const SegmentationEvidence &evidence,
                              const SegmentParams &params,
                              std::vector<CorrectionRecord> *records = nullptr);

BoundarySet HybridSegment(const signal::AudioBuffer &audio,
                          const std::vector<text::Syllable> &syllables,
                          const text::PhoneSet &phone_set,
                          const BoundarySet &hmm_bounds,
                          const SegmentParams &params,
                          SegmentationEvidence *evidence_out = nullptr,
                          std::vector<CorrectionRecord> *records = nullptr);

}  // namespace melhts::seg
