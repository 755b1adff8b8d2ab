// src/segment/hybrid.cpp

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

#include "segment/hybrid.hpp"

#include <cmath>
#include <string>

#include "common/error.hpp"

namespace melhts::seg {

double SnapBoundary(double hmm_time_ms, const BoundarySet &candidates,
                    double window_ms) {
  Require(window_ms > 0.0, ErrorKind::kParameter, "snap window must be > 0");
  double best = hmm_time_ms;
  double best_dist = window_ms;
  bool found = false;
  for (const auto &c : candidates.boundaries) {
    const double d = std::abs(c.time_ms - hmm_time_ms);
    if (d > window_ms) continue;
    // Candidates are ascending, so strict < keeps the earlier one on ties.
    if (!found || d < best_dist) {
      best = c.time_ms;
      best_dist = d;
      found = true;
    }
  }
  return best;
}

SegmentationEvidence ComputeEvidence(const signal::AudioBuffer &audio,
                                     const SegmentParams &params) {
  SegmentationEvidence ev;
  auto ste = signal::ShortTermEnergy(audio, params.ste_frames);
  ev.ste.frame_shift_ms = ste.frame_shift_ms;
  ev.ste.values = signal::MovingAverage(ste.values, params.smoothing_width);

  auto mag = signal::Magnitude(signal::Stft(audio, params.flux_frames));
  auto flux = signal::SubBandSpectralFlux(mag, params.flux_bands,
                                          params.flux_frames,
                                          audio.sample_rate_hz);
  ev.flux = flux;
  ev.flux.values = signal::MovingAverage(flux.values, params.smoothing_width);

  auto boundary_gd = params.gd;
  boundary_gd.invert = true;
  ev.ste_gd = signal::MinPhaseGroupDelay(ev.ste.values, ev.ste.frame_shift_ms,
                                         boundary_gd);
  ev.ste_gd.time_offset_ms = params.ste_frames.frame_length_ms / 2.0;

  auto onset_gd = params.gd;
  onset_gd.invert = false;
  ev.flux_gd = signal::MinPhaseGroupDelay(ev.flux.values,
                                          ev.flux.frame_shift_ms, onset_gd);
  // Flux at frame t measures the change from frame t-1, so it sits between
  // the two frame centers.
  ev.flux_gd.time_offset_ms = (params.flux_frames.frame_length_ms -
                               params.flux_frames.frame_shift_ms) / 2.0;

  const double duration = audio.duration_ms();
  ev.ste_candidates = signal::PickPeaks(ev.ste_gd, params.min_separation_ms,
                                        params.threshold_ratio);
  ev.flux_candidates = signal::PickPeaks(ev.flux_gd, params.min_separation_ms,
                                         params.threshold_ratio);
  for (auto *set : {&ev.ste_candidates, &ev.flux_candidates}) {
    set->utterance_duration_ms = duration;
    std::erase_if(set->boundaries,
                  [&](const Boundary &b) { return b.time_ms > duration; });
  }
  for (auto &b : ev.ste_candidates.boundaries) b.source = BoundarySource::kSte;
  for (auto &b : ev.flux_candidates.boundaries)
    b.source = BoundarySource::kSbsf;
  return ev;
}

BoundarySet CorrectBoundaries(const std::vector<text::Syllable> &syllables,
                              const text::PhoneSet &phone_set,
                              const BoundarySet &hmm_bounds,
                              const SegmentationEvidence &evidence,
                              const SegmentParams &params,
                              std::vector<CorrectionRecord> *records) {
  Require(syllables.size() >= 1 &&
              hmm_bounds.size() + 1 == syllables.size(),
          ErrorKind::kParameter,
          "expected " +
              std::to_string(syllables.empty() ? 0 : syllables.size() - 1) +
              " HMM boundaries (one per syllable transition), got " +
              std::to_string(hmm_bounds.size()));
  const double gap = params.ste_frames.frame_shift_ms;
  BoundarySet out;
  out.utterance_duration_ms = hmm_bounds.utterance_duration_ms;
  if (records) records->clear();

  for (std::size_t i = 0; i < hmm_bounds.size(); ++i) {
    const auto &left = syllables[i];
    const auto &right = syllables[i + 1];
    const auto method =
        RuleForPair(phone_set.ClassOf(left.phones.back()),
                    phone_set.ClassOf(right.phones.front()));
    const double hmm_time = hmm_bounds.boundaries[i].time_ms;

    Boundary b;
    b.left_unit = left.Name();
    b.right_unit = right.Name();
    b.time_ms = hmm_time;
    b.source = BoundarySource::kHmm;

    CorrectionRecord rec;
    rec.hmm_time_ms = hmm_time;
    rec.method = method;

    if (method != CorrectionMethod::kKeep) {
      const auto &cands = method == CorrectionMethod::kSte
                              ? evidence.ste_candidates
                              : evidence.flux_candidates;
      const double snapped = SnapBoundary(hmm_time, cands, params.snap_window_ms);
      if (snapped != hmm_time) {
        const double prev = out.boundaries.empty()
                                ? -gap
                                : out.boundaries.back().time_ms;
        const double next = i + 1 < hmm_bounds.size()
                                ? hmm_bounds.boundaries[i + 1].time_ms
                                : hmm_bounds.utterance_duration_ms + gap;
        if (snapped >= prev + gap && snapped <= next - gap &&
            snapped <= hmm_bounds.utterance_duration_ms) {
          b.time_ms = snapped;
          b.source = method == CorrectionMethod::kSte ? BoundarySource::kSte
                                                      : BoundarySource::kSbsf;
        } else {
          rec.reverted = true;
        }
      }
    }
    rec.time_ms = b.time_ms;
    rec.source = b.source;
    if (records) records->push_back(rec);
    out.boundaries.push_back(std::move(b));
  }
  return out;
}

BoundarySet HybridSegment(const signal::AudioBuffer &audio,
                          const std::vector<text::Syllable> &syllables,
                          const text::PhoneSet &phone_set,
                          const BoundarySet &hmm_bounds,
                          const SegmentParams &params,
                          SegmentationEvidence *evidence_out,
                          std::vector<CorrectionRecord> *records) {
  auto evidence = ComputeEvidence(audio, params);
  auto out = CorrectBoundaries(syllables, phone_set, hmm_bounds, evidence,
                               params, records);
  if (evidence_out) *evidence_out = std::move(evidence);
  return out;
}

}  // namespace melhts::seg
