// src/vocoder/mel_io.hpp

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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "signal/mel.hpp"

namespace melhts::vocoder {

inline constexpr std::uint32_t kMelVersion = 1;
inline constexpr std::size_t kMelHeaderBytes = 24;

/// Mel exchange file, little-endian:
///   "MELS" | u32 version | u32 num_filters | f32 frame_shift_ms |
///   u32 sample_rate_hz | u32 T | T x num_filters f32, row-major.
/// Values are stored as float32, so only float-representable mels survive
/// a round trip unchanged.
std::vector<unsigned char> ExportMel(const signal::MelSpectrogram &mel);
signal::MelSpectrogram ImportMel(const std::vector<unsigned char> &bytes,
                                 const std::string &what = "mel");

void WriteMel(const std::filesystem::path &path,
              const signal::MelSpectrogram &mel);
signal::MelSpectrogram ReadMel(const std::filesystem::path &path);

// Rounds every value to float32, as writing and reading back would.
void RoundToFloat(signal::MelSpectrogram *mel);

}  // namespace melhts::vocoder
