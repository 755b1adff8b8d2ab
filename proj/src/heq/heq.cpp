// src/heq/heq.cpp

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

#include "heq/heq.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "common/binio.hpp"
#include "common/error.hpp"
#include "common/fileio.hpp"

namespace melhts::heq {

namespace {

constexpr char kMagic[4] = {'M', 'H', 'E', 'Q'};

std::vector<double> Cdf(const Histogram1D &h) {
  std::vector<double> c(h.edges.size(), 0.0);
  std::uint64_t run = 0;
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    run += h.counts[i];
    c[i + 1] = static_cast<double>(run) / static_cast<double>(h.total);
  }
  c.back() = 1.0;
  return c;
}

double EvalCdf(const Histogram1D &h, const std::vector<double> &cdf, double x) {
  if (x <= h.edges.front()) return 0.0;
  if (x >= h.edges.back()) return 1.0;
  auto it = std::upper_bound(h.edges.begin(), h.edges.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - h.edges.begin()) - 1;
  const double f = (x - h.edges[i]) / (h.edges[i + 1] - h.edges[i]);
  return cdf[i] + f * (cdf[i + 1] - cdf[i]);
}

// Smallest x with F(x) >= u.
double Quantile(const Histogram1D &h, const std::vector<double> &cdf, double u) {
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    if (h.counts[i] == 0 || cdf[i + 1] < u) continue;
    const double f = std::clamp((u - cdf[i]) / (cdf[i + 1] - cdf[i]), 0.0, 1.0);
    return h.edges[i] + f * (h.edges[i + 1] - h.edges[i]);
  }
  return h.edges.back();
}

void CheckHistogram(const Histogram1D &h, const char *which) {
  Require(h.total > 0 && h.counts.size() >= 1 &&
              h.edges.size() == h.counts.size() + 1,
          ErrorKind::kParameter, std::string(which) + " histogram is empty");
}

}  // namespace

void Histogram1D::Merge(const Histogram1D &other) {
  Require(other.edges == edges, ErrorKind::kParameter,
          "cannot merge histograms with different edges");
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
  total += other.total;
}

std::vector<Histogram1D> EstimateHistograms(std::span<const Matrix> frames,
                                            int bins) {
  Require(bins >= 2, ErrorKind::kParameter, "bins must be >= 2");
  std::size_t dim = 0, rows = 0;
  for (const auto &m : frames) {
    if (m.rows() == 0) continue;
    Require(dim == 0 || m.cols() == dim, ErrorKind::kParameter,
            "matrices have different widths");
    dim = m.cols();
    rows += m.rows();
  }
  Require(rows > 0, ErrorKind::kInput, "no frames to build histograms from");

  std::vector<double> lo(dim, std::numeric_limits<double>::infinity());
  std::vector<double> hi(dim, -std::numeric_limits<double>::infinity());
  for (const auto &m : frames)
    for (std::size_t t = 0; t < m.rows(); ++t)
      for (std::size_t d = 0; d < dim; ++d) {
        lo[d] = std::min(lo[d], m(t, d));
        hi[d] = std::max(hi[d], m(t, d));
      }

  const auto B = static_cast<std::size_t>(bins);
  std::vector<Histogram1D> hists(dim);
  for (std::size_t d = 0; d < dim; ++d) {
    Require(std::isfinite(lo[d]) && std::isfinite(hi[d]), ErrorKind::kInput,
            "non-finite value in coefficient " + std::to_string(d));
    if (!(hi[d] > lo[d])) {
      lo[d] -= 0.5;
      hi[d] += 0.5;
    }
    auto &h = hists[d];
    h.edges.resize(B + 1);
    for (std::size_t i = 0; i <= B; ++i)
      h.edges[i] = lo[d] + (hi[d] - lo[d]) * static_cast<double>(i) / B;
    h.edges[B] = hi[d];
    h.counts.assign(B, 0);
  }
  for (const auto &m : frames)
    for (std::size_t t = 0; t < m.rows(); ++t)
      for (std::size_t d = 0; d < dim; ++d) {
        auto &h = hists[d];
        const double f = (m(t, d) - lo[d]) / (hi[d] - lo[d]);
        const auto bin = std::min(B - 1, static_cast<std::size_t>(
                                              std::max(0.0, f * static_cast<double>(B))));
        ++h.counts[bin];
        ++h.total;
      }
  return hists;
}

std::vector<Histogram1D> EstimateHistograms(
    std::span<const signal::MelSpectrogram> mels, int bins) {
  std::vector<Matrix> frames;
  for (const auto &m : mels) frames.push_back(m.frames);
  return EstimateHistograms(frames, bins);
}

double LutMap::Map(double x) const {
  if (x <= knots.front()) return values.front();
  if (x >= knots.back()) return values.back();
  auto it = std::upper_bound(knots.begin(), knots.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - knots.begin()) - 1;
  const double f = (x - knots[i]) / (knots[i + 1] - knots[i]);
  return values[i] + f * (values[i + 1] - values[i]);
}

LutMap BuildLut(const Histogram1D &src, const Histogram1D &tgt) {
  CheckHistogram(src, "source");
  CheckHistogram(tgt, "target");
  const auto fs = Cdf(src);
  const auto ft = Cdf(tgt);

  std::vector<double> knots = src.edges;
  for (double level : ft) {
    if (level <= 0.0 || level >= 1.0) continue;
    knots.push_back(Quantile(src, fs, level));
  }
  std::sort(knots.begin(), knots.end());
  const double span = src.edges.back() - src.edges.front();
  std::vector<double> unique;
  for (double k : knots)
    if (unique.empty() || k - unique.back() > 1e-12 * span) unique.push_back(k);

  LutMap map;
  map.knots = std::move(unique);
  for (double k : map.knots)
    map.values.push_back(Quantile(tgt, ft, EvalCdf(src, fs, k)));
  for (std::size_t i = 1; i < map.values.size(); ++i)
    map.values[i] = std::max(map.values[i], map.values[i - 1]);
  return map;
}

HeqLut BuildLuts(const std::vector<Histogram1D> &src,
                 const std::vector<Histogram1D> &tgt) {
  Require(src.size() == tgt.size() && !src.empty(), ErrorKind::kParameter,
          "source has " + std::to_string(src.size()) + " coefficients, target " +
              std::to_string(tgt.size()));
  HeqLut lut;
  for (std::size_t d = 0; d < src.size(); ++d)
    lut.maps.push_back(BuildLut(src[d], tgt[d]));
  return lut;
}

Matrix ApplyHeq(const Matrix &frames, const HeqLut &lut) {
  Require(frames.cols() == lut.maps.size(), ErrorKind::kParameter,
          "input has " + std::to_string(frames.cols()) +
              " coefficients but the lookup table has " +
              std::to_string(lut.maps.size()));
  Matrix out(frames.rows(), frames.cols());
  for (std::size_t t = 0; t < frames.rows(); ++t)
    for (std::size_t d = 0; d < frames.cols(); ++d)
      out(t, d) = lut.maps[d].Map(frames(t, d));
  return out;
}

signal::MelSpectrogram ApplyHeq(const signal::MelSpectrogram &mel,
                                const HeqLut &lut) {
  signal::MelSpectrogram out = mel;
  out.frames = ApplyHeq(mel.frames, lut);
  for (double &v : out.frames.data()) v = std::max(v, mel.log_floor);
  return out;
}

std::vector<unsigned char> SerializeLut(const HeqLut &lut) {
  ByteWriter w;
  w.PutBytes(kMagic, 4);
  w.Put<std::uint32_t>(kLutVersion);
  w.Put<std::uint32_t>(static_cast<std::uint32_t>(lut.maps.size()));
  for (const auto &m : lut.maps) {
    w.Put<std::uint32_t>(static_cast<std::uint32_t>(m.knots.size()));
    for (std::size_t k = 0; k < m.knots.size(); ++k) {
      w.Put<double>(m.knots[k]);
      w.Put<double>(m.values[k]);
    }
  }
  return w.Release();
}

HeqLut DeserializeLut(const std::vector<unsigned char> &bytes,
                      const std::string &what) {
  ByteReader r(bytes.data(), bytes.size(), what);
  char magic[4];
  r.GetBytes(magic, 4);
  if (std::string(magic, 4) != std::string(kMagic, 4))
    r.Corrupt("bad magic (not a melhts lookup table)");
  const auto version = r.Get<std::uint32_t>();
  if (version != kLutVersion)
    r.Corrupt("unsupported lookup table version " + std::to_string(version));
  const auto dim = r.Get<std::uint32_t>();
  if (dim == 0 || dim > 65536) r.Corrupt("bad coefficient count");
  HeqLut lut;
  for (std::uint32_t d = 0; d < dim; ++d) {
    const auto n = r.Get<std::uint32_t>();
    if (n == 0 || n > (1u << 24)) r.Corrupt("bad knot count");
    LutMap m;
    for (std::uint32_t k = 0; k < n; ++k) {
      const double knot = r.Get<double>();
      const double value = r.Get<double>();
      if (!std::isfinite(knot) || !std::isfinite(value))
        r.Corrupt("non-finite knot");
      if (!m.knots.empty() && (knot <= m.knots.back() || value < m.values.back()))
        r.Corrupt("map is not monotone");
      m.knots.push_back(knot);
      m.values.push_back(value);
    }
    lut.maps.push_back(std::move(m));
  }
  if (r.remaining() != 0) r.Corrupt("trailing bytes after lookup table");
  return lut;
}

void WriteLut(const std::filesystem::path &path, const HeqLut &lut) {
  const auto bytes = SerializeLut(lut);
  WriteFileAtomic(path, bytes.data(), bytes.size());
}

HeqLut ReadLut(const std::filesystem::path &path) {
  return DeserializeLut(ReadFileBytes(path), path.string());
}

void WriteLutCsv(const std::filesystem::path &path, const HeqLut &lut) {
  std::ostringstream os;
  os << "coefficient,knot,value\n" << std::setprecision(17);
  for (std::size_t d = 0; d < lut.maps.size(); ++d)
    for (std::size_t k = 0; k < lut.maps[d].knots.size(); ++k)
      os << d << ',' << lut.maps[d].knots[k] << ',' << lut.maps[d].values[k]
         << '\n';
  WriteFileAtomic(path, os.str());
}

}  // namespace melhts::heq
