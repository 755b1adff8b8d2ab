// src/pipeline/config.hpp

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

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "heq/heq.hpp"
#include "hmm/generate.hpp"
#include "hmm/tree.hpp"
#include "segment/hybrid.hpp"
#include "signal/stft.hpp"
#include "text/syllable.hpp"

namespace melhts::pipeline {

/// Every tunable of the pipeline. Loaded from an INI file:
///
///   [audio]    sample_rate
///   [frames]   frame_length_ms frame_shift_ms fft_size window
///   [mel]      num_filters fmin_hz fmax_hz (0 = Nyquist)
///   [segment]  ste_frame_ms flux_frame_ms smoothing_width wsf
///              threshold_ratio min_separation_ms snap_window_ms
///              split_policy (single_onset | maximal_onset)
///   [hmm]      num_states delta_window sentence_iterations iterations
///              var_floor_ratio min_occupancy min_gain mdl_factor
///              speaking_rate smoothing (mlpg | none)
///   [heq]      bins
///   [vocoder]  griffin_lim_iterations seed
///   [run]      workers
///   [paths]    corpus lexicon phone_classes work_dir model
///
/// Relative paths resolve against the directory of the config file.
struct PipelineConfig {
  int sample_rate_hz = 22050;
  signal::FrameSpec frames{25.0, 10.0, signal::WindowType::kHann, 1024};
  int num_filters = 80;
  double fmin_hz = 0.0;
  double fmax_hz = 0.0;

  seg::SegmentParams segment;
  text::SplitPolicy split_policy = text::SplitPolicy::kSingleOnset;

  int num_states = 5;
  int delta_window = 2;
  int sentence_iterations = 2;
  int iterations = 8;
  double var_floor_ratio = 1e-4;
  hmm::ClusterOptions cluster;
  hmm::GenerationOptions generation;

  int heq_bins = 64;
  int griffin_lim_iterations = 64;
  unsigned seed = 0;
  int workers = 1;

  std::filesystem::path corpus;
  std::filesystem::path lexicon;
  std::filesystem::path phone_classes;
  std::filesystem::path work_dir = "work";
  std::filesystem::path model;  // empty: <work_dir>/model.bin

  double EffectiveFmax() const { return fmax_hz > 0 ? fmax_hz : sample_rate_hz / 2.0; }
  std::filesystem::path ModelPath() const;
  std::filesystem::path MelDir() const { return work_dir / "mel"; }
  std::filesystem::path ContourDir() const { return work_dir / "contours"; }
  std::filesystem::path LabelDir() const { return work_dir / "labels"; }
  std::filesystem::path AlignDir() const { return work_dir / "align"; }
  std::filesystem::path GeneratedDir() const { return work_dir / "generated"; }
};

// "section.key" = "value" pairs applied after the file (flags override the
// config). Unknown keys and malformed values throw kParameter.
using Overrides = std::vector<std::pair<std::string, std::string>>;

PipelineConfig LoadConfig(const std::filesystem::path &path,
                          const Overrides &overrides = {});
PipelineConfig ParseConfig(const std::string &text,
                           const std::filesystem::path &base_dir,
                           const Overrides &overrides = {});

// Range checks against each module's preconditions; throws kParameter.
void ValidateConfig(const PipelineConfig &config);

// The effective configuration in the same INI layout.
std::string FormatConfig(const PipelineConfig &config);

// MELHTS_THREADS, when set to a positive integer, caps |configured|.
int WorkerCount(int configured);

}  // namespace melhts::pipeline
