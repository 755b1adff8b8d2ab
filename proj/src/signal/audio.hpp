// src/signal/audio.hpp

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
#include <vector>

namespace melhts::signal {

/// Mono audio with samples in [-1, 1].
struct AudioBuffer {
  std::vector<double> samples;
  int sample_rate_hz = 22050;

  double duration_ms() const {
    return 1000.0 * static_cast<double>(samples.size()) / sample_rate_hz;
  }
};

bool IsSupportedSampleRate(int hz);

// Throws kParameter / kInput when the buffer violates its invariants.
void ValidateAudio(const AudioBuffer &audio);

// 16-bit PCM little-endian mono only; multichannel input is rejected.
AudioBuffer ReadWav(const std::filesystem::path &path);

// Writes 16-bit PCM with the peak normalized to -1 dBFS (silence stays
// silent).
void WriteWav(const std::filesystem::path &path, const AudioBuffer &audio);

// Band-limited windowed-sinc resampling.
AudioBuffer Resample(const AudioBuffer &audio, int target_rate_hz);

}  // namespace melhts::signal
