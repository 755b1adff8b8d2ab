// src/heq/heq.hpp

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
#include <span>
#include <string>
#include <vector>

#include "common/matrix.hpp"
#include "signal/mel.hpp"

namespace melhts::heq {

struct Histogram1D {
  std::vector<double> edges;  // bins + 1, strictly ascending
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;

  std::size_t bins() const { return counts.size(); }
  // Mergeable: both histograms must share their edges.
  void Merge(const Histogram1D &other);
};

// Equal-width bins over [min, max] of column d across all matrices. A
// column with a single distinct value v spans [v - 0.5, v + 0.5].
std::vector<Histogram1D> EstimateHistograms(std::span<const Matrix> frames,
                                            int bins);
std::vector<Histogram1D> EstimateHistograms(
    std::span<const signal::MelSpectrogram> mels, int bins);

/// Monotone piecewise-linear map; inputs outside [knots.front(),
/// knots.back()] are clamped first.
struct LutMap {
  std::vector<double> knots;
  std::vector<double> values;

  double Map(double x) const;
  friend bool operator==(const LutMap &, const LutMap &) = default;
};

struct HeqLut {
  std::vector<LutMap> maps;  // one per coefficient
  friend bool operator==(const HeqLut &, const HeqLut &) = default;
};

/// x -> Q_tgt(F_src(x)) with both CDFs linear within bins. Knots are the
/// source edges plus the source preimages of the target CDF levels, which
/// makes the composition exactly piecewise linear between them.
LutMap BuildLut(const Histogram1D &src, const Histogram1D &tgt);
HeqLut BuildLuts(const std::vector<Histogram1D> &src,
                 const std::vector<Histogram1D> &tgt);

Matrix ApplyHeq(const Matrix &frames, const HeqLut &lut);
signal::MelSpectrogram ApplyHeq(const signal::MelSpectrogram &mel,
                                const HeqLut &lut);

inline constexpr std::uint32_t kLutVersion = 1;

// "MHEQ", u32 version, u32 D, then per map: u32 K and K (f64 knot, f64
// value) pairs, little-endian.
std::vector<unsigned char> SerializeLut(const HeqLut &lut);
HeqLut DeserializeLut(const std::vector<unsigned char> &bytes,
                      const std::string &what = "lut");
void WriteLut(const std::filesystem::path &path, const HeqLut &lut);
HeqLut ReadLut(const std::filesystem::path &path);
// coefficient,knot,value
void WriteLutCsv(const std::filesystem::path &path, const HeqLut &lut);

}  // namespace melhts::heq
