// src/pipeline/commands.hpp

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
#include <vector>

#include "hmm/model.hpp"
#include "pipeline/config.hpp"
#include "pipeline/log.hpp"
#include "segment/boundary.hpp"
#include "signal/mel.hpp"
#include "text/phones.hpp"

namespace melhts::pipeline {

struct CommandContext {
  PipelineConfig config;
  LogSink log;
};

// One MelExport file plus STE and SBSF CSVs per utterance. Every utterance
// is attempted; failures are logged and the first one is rethrown at the
// end.
void RunExtract(const CommandContext &ctx);

// Flat start, sentence-level and syllable-chunked re-estimation, state
// tying; writes the model and <work_dir>/train.log.
void RunTrain(const CommandContext &ctx);

// Corrected syllable boundaries per utterance as HTK labels.
void RunSegment(const CommandContext &ctx);

// Phone-level forced alignment per utterance as HTK labels.
void RunAlign(const CommandContext &ctx);

/// Text-to-mel with a loaded model and lexicon.
class Synthesizer {
 public:
  Synthesizer(const PipelineConfig &config, hmm::AcousticModel model,
              text::Lexicon lexicon);
  static Synthesizer Load(const PipelineConfig &config);

  // Throws kData naming the word for out-of-lexicon input. Empty text gives
  // a single silence.
  signal::MelSpectrogram Synthesize(const std::string &text) const;
  const hmm::AcousticModel &model() const { return model_; }

 private:
  PipelineConfig config_;
  hmm::AcousticModel model_;
  text::Lexicon lexicon_;
};

struct SynthRequest {
  std::string text;
  std::filesystem::path mel_out;
  std::filesystem::path wav_out;  // empty: no audio
};

// Returns the wall-clock seconds spent turning text into the mel (model
// loading and file output excluded); also logged as synth_seconds.
double RunSynth(const CommandContext &ctx, const SynthRequest &request);

// Empty |sources| and |targets| mean generated mels for the manifest
// transcripts against the extracted mels.
void RunHeqFit(const CommandContext &ctx,
               const std::vector<std::filesystem::path> &sources,
               const std::vector<std::filesystem::path> &targets,
               const std::filesystem::path &lut_out);
void RunHeqApply(const CommandContext &ctx, const std::filesystem::path &lut,
                 const std::filesystem::path &mel_in,
                 const std::filesystem::path &mel_out);

// |iterations| < 0 uses the configured Griffin-Lim iteration count.
void RunInvert(const CommandContext &ctx, const std::filesystem::path &mel_in,
               const std::filesystem::path &wav_out, int iterations);

double EvalMelL1(const std::filesystem::path &a, const std::filesystem::path &b);

// Percentage of reference boundaries (entry ends except the last) within
// +-tolerance_ms of the hypothesis boundary at the same position. The files
// must hold the same number of entries.
double EvalLabelAccuracy(const std::filesystem::path &reference,
                         const std::filesystem::path &hypothesis,
                         double tolerance_ms);

}  // namespace melhts::pipeline
