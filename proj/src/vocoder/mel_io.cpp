// src/vocoder/mel_io.cpp

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

#include "vocoder/mel_io.hpp"

#include <cmath>

#include "common/binio.hpp"
#include "common/error.hpp"
#include "common/fileio.hpp"

namespace melhts::vocoder {

namespace {
constexpr char kMagic[4] = {'M', 'E', 'L', 'S'};
}

std::vector<unsigned char> ExportMel(const signal::MelSpectrogram &mel) {
  Require(mel.num_filters >= 1 &&
              mel.frames.cols() == static_cast<std::size_t>(mel.num_filters),
          ErrorKind::kParameter, "mel width does not match num_filters");
  ByteWriter w;
  w.PutBytes(kMagic, 4);
  w.Put<std::uint32_t>(kMelVersion);
  w.Put<std::uint32_t>(static_cast<std::uint32_t>(mel.num_filters));
  w.Put<float>(static_cast<float>(mel.frame_shift_ms));
  w.Put<std::uint32_t>(static_cast<std::uint32_t>(mel.sample_rate_hz));
  w.Put<std::uint32_t>(static_cast<std::uint32_t>(mel.frames.rows()));
  for (double v : mel.frames.data()) w.Put<float>(static_cast<float>(v));
  return w.Release();
}

signal::MelSpectrogram ImportMel(const std::vector<unsigned char> &bytes,
                                 const std::string &what) {
  ByteReader r(bytes.data(), bytes.size(), what);
  char magic[4];
  r.GetBytes(magic, 4);
  if (std::string(magic, 4) != std::string(kMagic, 4))
    r.Corrupt("bad magic (not a mel file)");
  const auto version = r.Get<std::uint32_t>();
  if (version != kMelVersion)
    r.Corrupt("unsupported mel version " + std::to_string(version));
  signal::MelSpectrogram mel;
  const auto filters = r.Get<std::uint32_t>();
  if (filters == 0 || filters > 65536) r.Corrupt("bad num_filters");
  mel.num_filters = static_cast<int>(filters);
  mel.frame_shift_ms = r.Get<float>();
  if (!(mel.frame_shift_ms > 0.0) || !std::isfinite(mel.frame_shift_ms))
    r.Corrupt("bad frame shift");
  mel.sample_rate_hz = static_cast<int>(r.Get<std::uint32_t>());
  const auto frames = r.Get<std::uint32_t>();
  const std::size_t expect =
      kMelHeaderBytes + std::size_t{frames} * filters * sizeof(float);
  if (bytes.size() != expect)
    Fail(ErrorKind::kFormat,
         what + ": expected " + std::to_string(expect) + " bytes for " +
             std::to_string(frames) + " x " + std::to_string(filters) +
             " frames, got " + std::to_string(bytes.size()) +
             " (payload starts at byte offset " +
             std::to_string(kMelHeaderBytes) + ")");
  mel.frames = Matrix(frames, filters);
  for (double &v : mel.frames.data()) {
    const float f = r.Get<float>();
    if (!std::isfinite(f)) r.Corrupt("non-finite value");
    v = f;
  }
  return mel;
}

void WriteMel(const std::filesystem::path &path,
              const signal::MelSpectrogram &mel) {
  const auto bytes = ExportMel(mel);
  WriteFileAtomic(path, bytes.data(), bytes.size());
}

signal::MelSpectrogram ReadMel(const std::filesystem::path &path) {
  return ImportMel(ReadFileBytes(path), path.string());
}

void RoundToFloat(signal::MelSpectrogram *mel) {
  for (double &v : mel->frames.data()) v = static_cast<float>(v);
}

}  // namespace melhts::vocoder
