// src/signal/audio.cpp

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

#include "signal/audio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include "common/binio.hpp"
#include "common/error.hpp"
#include "common/fileio.hpp"

namespace melhts::signal {

bool IsSupportedSampleRate(int hz) {
  return hz == 16000 || hz == 22050 || hz == 44100 || hz == 48000;
}

void ValidateAudio(const AudioBuffer &audio) {
  Require(IsSupportedSampleRate(audio.sample_rate_hz), ErrorKind::kParameter,
          "sample_rate_hz: unsupported rate " +
              std::to_string(audio.sample_rate_hz));
  Require(!audio.samples.empty(), ErrorKind::kInput, "audio is empty");
  for (double s : audio.samples)
    Require(std::isfinite(s), ErrorKind::kInput,
            "audio contains non-finite samples");
}

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::string Tag(ByteReader &r) {
  char t[4];
  r.GetBytes(t, 4);
  return std::string(t, 4);
}

}  // namespace

AudioBuffer ReadWav(const std::filesystem::path &path) {
  auto bytes = ReadFileBytes(path);
  ByteReader r(bytes.data(), bytes.size(), path.string());
  if (Tag(r) != "RIFF") r.Corrupt("missing RIFF tag");
  r.Get<std::uint32_t>();
  if (Tag(r) != "WAVE") r.Corrupt("missing WAVE tag");

  int channels = 0, rate = 0, bits = 0;
  bool have_fmt = false;
  AudioBuffer out;
  while (r.remaining() >= 8) {
    std::string id = Tag(r);
    std::uint32_t size = r.Get<std::uint32_t>();
    if (id == "fmt ") {
      if (size < 16) r.Corrupt("fmt chunk too small");
      auto format = r.Get<std::uint16_t>();
      channels = r.Get<std::uint16_t>();
      rate = static_cast<int>(r.Get<std::uint32_t>());
      r.Get<std::uint32_t>();
      r.Get<std::uint16_t>();
      bits = r.Get<std::uint16_t>();
      std::vector<unsigned char> rest(size - 16);
      r.GetBytes(rest.data(), rest.size());
      if (format == kFormatExtensible && rest.size() >= 10) {
        format = static_cast<std::uint16_t>(rest[8] | (rest[9] << 8));
      }
      if (format != kFormatPcm) r.Corrupt("only PCM WAV is supported");
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt) r.Corrupt("data chunk before fmt chunk");
      if (channels != 1)
        Fail(ErrorKind::kInput, path.string() + ": expected mono audio, got " +
                                    std::to_string(channels) + " channels");
      if (bits != 16)
        Fail(ErrorKind::kInput, path.string() + ": expected 16-bit PCM, got " +
                                    std::to_string(bits) + "-bit");
      std::size_t n = std::min<std::size_t>(size, r.remaining()) / 2;
      out.samples.resize(n);
      for (std::size_t i = 0; i < n; ++i)
        out.samples[i] = r.Get<std::int16_t>() / 32768.0;
      out.sample_rate_hz = rate;
      ValidateAudio(out);
      return out;
    } else {
      std::vector<unsigned char> skip(size + (size & 1));
      r.GetBytes(skip.data(), std::min(skip.size(), r.remaining()));
    }
  }
  r.Corrupt("no data chunk");
}

void WriteWav(const std::filesystem::path &path, const AudioBuffer &audio) {
  double peak = 0.0;
  for (double s : audio.samples) peak = std::max(peak, std::abs(s));
  const double target = std::pow(10.0, -1.0 / 20.0);
  const double gain = peak > 0.0 ? target / peak : 0.0;

  const auto n = static_cast<std::uint32_t>(audio.samples.size());
  ByteWriter w;
  w.PutBytes("RIFF", 4);
  w.Put<std::uint32_t>(36 + 2 * n);
  w.PutBytes("WAVEfmt ", 8);
  w.Put<std::uint32_t>(16);
  w.Put<std::uint16_t>(kFormatPcm);
  w.Put<std::uint16_t>(1);
  w.Put<std::uint32_t>(static_cast<std::uint32_t>(audio.sample_rate_hz));
  w.Put<std::uint32_t>(static_cast<std::uint32_t>(audio.sample_rate_hz) * 2);
  w.Put<std::uint16_t>(2);
  w.Put<std::uint16_t>(16);
  w.PutBytes("data", 4);
  w.Put<std::uint32_t>(2 * n);
  for (double s : audio.samples) {
    double v = std::round(s * gain * 32767.0);
    w.Put<std::int16_t>(static_cast<std::int16_t>(std::clamp(v, -32768.0, 32767.0)));
  }
  WriteFileAtomic(path, w.bytes().data(), w.bytes().size());
}

AudioBuffer Resample(const AudioBuffer &audio, int target_rate_hz) {
  Require(target_rate_hz > 0, ErrorKind::kParameter,
          "target_rate_hz must be positive");
  if (audio.sample_rate_hz == target_rate_hz) return audio;
  const double ratio =
      static_cast<double>(target_rate_hz) / audio.sample_rate_hz;
  const double cutoff = std::min(1.0, ratio) * 0.97;
  const int half_taps = static_cast<int>(std::ceil(16.0 / cutoff));
  const auto in_len = static_cast<long>(audio.samples.size());
  const auto out_len = static_cast<long>(std::floor(in_len * ratio));

  AudioBuffer out;
  out.sample_rate_hz = target_rate_hz;
  out.samples.resize(static_cast<std::size_t>(std::max(out_len, 1L)));
  for (long m = 0; m < static_cast<long>(out.samples.size()); ++m) {
    const double pos = m / ratio;
    const long center = static_cast<long>(std::floor(pos));
    double acc = 0.0;
    for (long k = center - half_taps + 1; k <= center + half_taps; ++k) {
      if (k < 0 || k >= in_len) continue;
      const double u = pos - k;
      const double x = cutoff * u;
      const double sinc =
          x == 0.0 ? 1.0 : std::sin(std::numbers::pi * x) / (std::numbers::pi * x);
      // Blackman window over [-half_taps, half_taps].
      const double t = (u / half_taps + 1.0) * 0.5;
      const double win = 0.42 - 0.5 * std::cos(2 * std::numbers::pi * t) +
                         0.08 * std::cos(4 * std::numbers::pi * t);
      acc += audio.samples[static_cast<std::size_t>(k)] * cutoff * sinc * win;
    }
    out.samples[static_cast<std::size_t>(m)] = std::clamp(acc, -1.0, 1.0);
  }
  return out;
}

}  // namespace melhts::signal
