// tests/acceptance/acceptance.cpp

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

// Acceptance checks for the whole toolkit. Prints one PASS/FAIL line per
// criterion and exits nonzero if any fails.
//
//   acceptance <path to the melhts executable> [scratch dir]

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "common/error.hpp"
#include "common/fileio.hpp"
#include "heq/heq.hpp"
#include "hmm/align.hpp"
#include "hmm/generate.hpp"
#include "segment/hybrid.hpp"
#include "segment/rules.hpp"
#include "signal/delta.hpp"
#include "signal/stft.hpp"
#include "support/stats.hpp"
#include "support/synth.hpp"
#include "vocoder/mel_io.hpp"
#include "vocoder/vocoder.hpp"

namespace fs = std::filesystem;
using namespace melhts;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double Since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string Fmt(const char *f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

fs::path g_cli;
fs::path g_scratch;

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult Run(const std::string &args) {
  const std::string cmd = "\"" + g_cli.string() + "\" " + args + " 2>&1";
  RunResult r;
  FILE *p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  while (std::fgets(buf.data(), buf.size(), p)) r.out += buf.data();
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::map<std::string, std::string> Fields(const std::string &line) {
  std::map<std::string, std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq != std::string::npos) out[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return out;
}

std::string Quote(const fs::path &p) { return "\"" + p.string() + "\""; }

// ---------------------------------------------------------------- 1

void Durations(std::size_t states, std::size_t frames,
               const std::function<void(const std::vector<std::size_t> &)> &fn) {
  std::vector<std::size_t> d(states, 1);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t j, std::size_t left) {
    if (j + 1 == states) {
      d[j] = left;
      fn(d);
      return;
    }
    for (std::size_t k = 1; k + (states - j - 1) <= left; ++k) {
      d[j] = k;
      rec(j + 1, left - k);
    }
  };
  rec(0, frames);
}

Outcome ViterbiOracle() {
  const auto t0 = Clock::now();
  std::mt19937 rng(2024);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> var(0.3, 2.0), loop(0.05, 0.95);
  int checked_paths = 0, mismatches = 0;
  double worst = 0.0;
  for (int inst = 0; inst < 200; ++inst) {
    const std::size_t dim = 2;
    hmm::PhoneModels models;
    for (const char *name : {"a", "b"}) {
      hmm::PhoneHmm h;
      for (int s = 0; s < 2; ++s) {
        hmm::Gaussian pdf;
        for (std::size_t d = 0; d < dim; ++d) {
          pdf.mean.push_back(g(rng));
          pdf.var.push_back(var(rng));
        }
        h.states.push_back({pdf, 1.0});
        h.self_loop.push_back(loop(rng));
        h.durations.push_back({});
      }
      models[name] = h;
    }
    std::vector<std::string> phones;
    const int n = 1 + static_cast<int>(rng() % 2);
    for (int i = 0; i < n; ++i) phones.push_back(rng() % 2 ? "a" : "b");
    const std::size_t N = 2 * phones.size();
    const std::size_t T = N + rng() % (10 - N + 1);
    Matrix x(T, dim);
    for (double &v : x.data()) v = g(rng);

    // Exhaustive search written against the model parameters directly.
    double best = -std::numeric_limits<double>::infinity();
    std::vector<std::size_t> best_path;
    int ties = 0;
    Durations(N, T, [&](const std::vector<std::size_t> &dur) {
      double ll = 0.0;
      std::vector<std::size_t> path;
      std::size_t t = 0;
      for (std::size_t j = 0; j < N; ++j) {
        const auto &h = models[phones[j / 2]];
        const auto &pdf = h.states[j % 2].pdf;
        const double a = h.self_loop[j % 2];
        for (std::size_t k = 0; k < dur[j]; ++k, ++t) {
          for (std::size_t d = 0; d < dim; ++d) {
            const double z = x(t, d) - pdf.mean[d];
            ll += -0.5 * (std::log(2 * std::numbers::pi * pdf.var[d]) + z * z / pdf.var[d]);
          }
          path.push_back(j);
        }
        ll += static_cast<double>(dur[j] - 1) * std::log(a) + std::log(1.0 - a);
      }
      if (ll > best + 1e-12) {
        best = ll;
        best_path = path;
        ties = 1;
      } else if (std::abs(ll - best) <= 1e-12) {
        ++ties;
      }
    });
    const auto al = hmm::ViterbiAlign(models, x, phones);
    worst = std::max(worst, std::abs(al.log_likelihood - best));
    if (ties == 1) {
      ++checked_paths;
      if (al.state_path != best_path) ++mismatches;
    }
  }
  const double secs = Since(t0);
  Outcome o;
  o.pass = worst <= 1e-9 && mismatches == 0 && secs < 10.0;
  o.detail = "max |dloglik|=" + Fmt("%.3g", worst) + " path_mismatches=" +
             std::to_string(mismatches) + "/" + std::to_string(checked_paths) +
             " (unique optima) seconds=" + Fmt("%.2f", secs);
  return o;
}

// ---------------------------------------------------------------- 2

Outcome BaumWelchMonotone() {
  const auto t0 = Clock::now();
  const auto cfg = testing::WriteToyCorpus(g_scratch / "bw", {.utterances = 20});
  auto ex = Run("extract -q -c " + Quote(cfg));
  auto tr = Run("train -q -c " + Quote(cfg));
  if (ex.code || tr.code) return {false, "extract/train failed: " + ex.out + tr.out};
  std::istringstream log(ReadFileText(cfg.parent_path() / "work" / "train.log"));
  std::string line;
  std::vector<double> ll;
  while (std::getline(log, line)) {
    auto f = Fields(line);
    if (f["stage"] == "embedded" && f.count("loglik")) ll.push_back(std::stod(f["loglik"]));
  }
  double worst_drop = 0.0;
  for (std::size_t i = 1; i < ll.size(); ++i)
    worst_drop = std::max(worst_drop, ll[i - 1] - ll[i]);
  const double secs = Since(t0);
  Outcome o;
  o.pass = ll.size() == 9 && worst_drop <= 1e-6 && secs < 60.0;
  o.detail = "iterations=" + std::to_string(ll.empty() ? 0 : ll.size() - 1) +
             " loglik " + (ll.empty() ? "?" : Fmt("%.6f", ll.front())) + " -> " +
             (ll.empty() ? "?" : Fmt("%.6f", ll.back())) +
             " max_drop=" + Fmt("%.3g", worst_drop) + " seconds=" + Fmt("%.2f", secs);
  return o;
}

// ---------------------------------------------------------------- 3

Outcome SegmentationRecovery() {
  const auto t0 = Clock::now();
  std::mt19937 rng(3);
  const auto phones = text::ParsePhoneSet("a vowel\nt stop\n");
  seg::SegmentParams params;
  int hits = 0, total = 0;
  for (int u = 0; u < 50; ++u) {
    auto utt = testing::BurstsAndGaps(3 + u % 5, rng);
    std::vector<text::Syllable> syls;
    for (std::size_t s = 0; s <= utt.boundaries_ms.size(); ++s) {
      text::Syllable sy;
      sy.phones = {"t", "a"};
      sy.first_phone = 2 * s;
      sy.has_nucleus = true;
      syls.push_back(sy);
    }
    seg::BoundarySet hmm;
    hmm.utterance_duration_ms = utt.audio.duration_ms();
    for (double t : utt.boundaries_ms)
      hmm.boundaries.push_back(
          {t + (rng() % 2 ? 40.0 : -40.0), seg::BoundarySource::kHmm, "", ""});
    const auto out = seg::HybridSegment(utt.audio, syls, phones, hmm, params);
    for (std::size_t i = 0; i < utt.boundaries_ms.size(); ++i) {
      ++total;
      hits += std::abs(out.boundaries[i].time_ms - utt.boundaries_ms[i]) <= 20.0;
    }
  }
  const double pct = 100.0 * hits / total;
  const double secs = Since(t0);
  return {pct >= 90.0 && secs < 60.0,
          "within 20 ms: " + std::to_string(hits) + "/" + std::to_string(total) + " = " +
              Fmt("%.1f%%", pct) + " seconds=" + Fmt("%.2f", secs)};
}

// ---------------------------------------------------------------- 4

Outcome RuleTable() {
  using PC = text::PhoneClass;
  int pairs = 0, bad = 0, ste = 0, sbsf = 0, keep = 0;
  for (int l = 0; l < text::kNumPhoneClasses; ++l) {
    for (int r = 0; r < text::kNumPhoneClasses; ++r) {
      const auto left = text::ClassFromIndex(l), right = text::ClassFromIndex(r);
      ++pairs;
      const bool fl = left == PC::kFricative || left == PC::kAffricate;
      const bool fr = right == PC::kFricative || right == PC::kAffricate;
      const bool sbsf_cond = fl != fr;
      const bool ste_cond = left != PC::kFricative && left != PC::kNasal &&
                            right != PC::kFricative && right != PC::kAffricate &&
                            right != PC::kNasal && right != PC::kSemivowel;
      // Exactly one clause fires once SBSF takes precedence.
      const bool c_sbsf = sbsf_cond, c_ste = ste_cond && !sbsf_cond,
                 c_keep = !c_sbsf && !c_ste;
      if (int(c_sbsf) + int(c_ste) + int(c_keep) != 1) ++bad;
      const auto want = c_sbsf  ? seg::CorrectionMethod::kSbsf
                        : c_ste ? seg::CorrectionMethod::kSte
                                : seg::CorrectionMethod::kKeep;
      const auto got = seg::RuleForPair(left, right);
      if (got != want) ++bad;
      ste += got == seg::CorrectionMethod::kSte;
      sbsf += got == seg::CorrectionMethod::kSbsf;
      keep += got == seg::CorrectionMethod::kKeep;
    }
  }
  return {pairs == 64 && bad == 0 && ste + sbsf + keep == 64,
          "pairs=" + std::to_string(pairs) + " ste=" + std::to_string(ste) +
              " sbsf=" + std::to_string(sbsf) + " keep=" + std::to_string(keep) +
              " violations=" + std::to_string(bad)};
}

// ---------------------------------------------------------------- 5

Outcome HeqMatching() {
  const auto t0 = Clock::now();
  std::mt19937 rng(55);
  const std::size_t n = 100000;
  const std::vector<std::array<double, 4>> params = {
      {0.0, 1.0, 3.0, 2.0}, {-5.0, 0.5, -4.0, 3.0}, {10.0, 4.0, 2.0, 0.25}, {1.0, 2.0, 1.5, 2.0}};
  const std::size_t D = params.size();
  auto draw = [&](bool target) {
    Matrix m(n, D);
    for (std::size_t d = 0; d < D; ++d) {
      std::normal_distribution<double> g(params[d][target ? 2 : 0], params[d][target ? 3 : 1]);
      for (std::size_t i = 0; i < n; ++i) m(i, d) = g(rng);
    }
    return m;
  };
  const std::vector<Matrix> src = {draw(false)}, tgt = {draw(true)};
  const auto lut = heq::BuildLuts(heq::EstimateHistograms(src, 64),
                                  heq::EstimateHistograms(tgt, 64));
  const Matrix held_out = draw(false);
  const Matrix mapped = heq::ApplyHeq(held_out, lut);
  double worst_ratio = 0.0;
  std::string per;
  for (std::size_t d = 0; d < D; ++d) {
    std::vector<double> a(n), b(n), m(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = held_out(i, d);
      b[i] = tgt[0](i, d);
      m[i] = mapped(i, d);
    }
    const double pre = testing::KsStatistic(a, b), post = testing::KsStatistic(m, b);
    worst_ratio = std::max(worst_ratio, post / pre);
    per += " d" + std::to_string(d) + "=" + Fmt("%.4f", post) + "/" + Fmt("%.4f", pre);
  }
  const double secs = Since(t0);
  return {worst_ratio <= 0.25 && secs < 30.0,
          "KS post/pre (held-out source)" + per + " worst_ratio=" +
              Fmt("%.4f", worst_ratio) + " seconds=" + Fmt("%.2f", secs)};
}

// ---------------------------------------------------------------- 6

Outcome MlpgCorrectness() {
  std::mt19937 rng(66);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> p(0.2, 5.0);
  double worst = 0.0;
  for (int hw : {1, 2, 3}) {
    for (std::size_t T : {static_cast<std::size_t>(2 * hw + 1), std::size_t{9},
                          std::size_t{20}, std::size_t{41}}) {
      const std::size_t D = 3;
      Matrix mean(T, 3 * D), prec(T, 3 * D);
      std::array<std::vector<double>, 2> ms, ps;
      for (int s = 0; s < 2; ++s)
        for (std::size_t k = 0; k < 3 * D; ++k) {
          ms[s].push_back(g(rng));
          ps[s].push_back(p(rng));
        }
      for (std::size_t t = 0; t < T; ++t)
        for (std::size_t k = 0; k < 3 * D; ++k) {
          mean(t, k) = ms[t < T / 2 ? 0 : 1][k];
          prec(t, k) = ps[t < T / 2 ? 0 : 1][k];
        }
      const auto c = hmm::MlpgSolve(mean, prec, hw);
      Eigen::MatrixXd W(3 * T, T);
      for (std::size_t j = 0; j < T; ++j) {
        Matrix e(T, 1, 0.0);
        e(j, 0) = 1.0;
        const auto f = signal::DeltaFeatures(e, hw);
        for (std::size_t t = 0; t < T; ++t)
          for (std::size_t s = 0; s < 3; ++s)
            W(static_cast<Eigen::Index>(s * T + t), static_cast<Eigen::Index>(j)) = f(t, s);
      }
      for (std::size_t d = 0; d < D; ++d) {
        Eigen::VectorXd mu(3 * T), P(3 * T);
        for (std::size_t s = 0; s < 3; ++s)
          for (std::size_t t = 0; t < T; ++t) {
            mu(static_cast<Eigen::Index>(s * T + t)) = mean(t, s * D + d);
            P(static_cast<Eigen::Index>(s * T + t)) = prec(t, s * D + d);
          }
        const Eigen::MatrixXd A = W.transpose() * P.asDiagonal() * W;
        const Eigen::VectorXd b = W.transpose() * P.asDiagonal() * mu;
        const Eigen::VectorXd ref = A.fullPivLu().solve(b);
        for (std::size_t t = 0; t < T; ++t)
          worst = std::max(worst, std::abs(c(t, d) - ref(static_cast<Eigen::Index>(t))));
      }
    }
  }
  // Zero delta precision: the stacked static means come back exactly.
  bool exact = true;
  const std::size_t T = 16, D = 4;
  Matrix mean(T, 3 * D), prec(T, 3 * D, 0.0);
  for (double &v : mean.data()) v = g(rng);
  for (std::size_t t = 0; t < T; ++t)
    for (std::size_t d = 0; d < D; ++d) prec(t, d) = p(rng);
  const auto c = hmm::MlpgSolve(mean, prec, 2);
  for (std::size_t t = 0; t < T; ++t)
    for (std::size_t d = 0; d < D; ++d) exact &= c(t, d) == mean(t, d);
  return {worst <= 1e-8 && exact,
          "max |banded - dense|=" + Fmt("%.3g", worst) +
              " zero-delta exact=" + (exact ? "yes" : "no")};
}

// ---------------------------------------------------------------- 7

Outcome GriffinLimConvergence() {
  const int rate = 22050;
  const signal::FrameSpec spec{25.0, 10.0, signal::WindowType::kHann, 1024};
  signal::AudioBuffer sine;
  sine.sample_rate_hz = rate;
  sine.samples.resize(rate / 2);
  for (std::size_t i = 0; i < sine.samples.size(); ++i)
    sine.samples[i] = 0.5 * std::sin(2 * std::numbers::pi * 440.0 * i / rate);
  const auto mag = signal::Magnitude(signal::Stft(sine, spec));
  std::map<int, double> sc;
  vocoder::GriffinLimOptions opts;
  opts.iterations = 64;
  opts.seed = 0;
  opts.observer = [&](int it, double v) {
    if (it == 0 || it == 8 || it == 32 || it == 64) sc[it] = v;
  };
  const auto y = vocoder::GriffinLim(mag, spec, rate, opts);
  const bool monotone = sc.size() == 4 && sc[8] <= sc[0] && sc[32] <= sc[8] && sc[64] <= sc[32];

  // Dominant frequency of the whole output against the input tone.
  const std::size_t n = y.samples.size();
  std::size_t best_k = 0;
  double best_p = -1.0;
  for (std::size_t k = 1; k < n / 2; ++k) {
    const double f = static_cast<double>(k) * rate / n;
    if (f > 2000.0) break;
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double ph = 2 * std::numbers::pi * k * i / n;
      re += y.samples[i] * std::cos(ph);
      im -= y.samples[i] * std::sin(ph);
    }
    if (re * re + im * im > best_p) {
      best_p = re * re + im * im;
      best_k = k;
    }
  }
  const double f_out = static_cast<double>(best_k) * rate / n;
  const double bin_hz = static_cast<double>(rate) / spec.fft_size;
  const bool freq_ok = std::abs(f_out - 440.0) <= bin_hz;
  return {monotone && freq_ok,
          "SC@0=" + Fmt("%.4f", sc[0]) + " @8=" + Fmt("%.4f", sc[8]) + " @32=" +
              Fmt("%.4f", sc[32]) + " @64=" + Fmt("%.4f", sc[64]) + " f_out=" +
              Fmt("%.1f", f_out) + " Hz (bin " + Fmt("%.1f", bin_hz) + " Hz)"};
}

// ---------------------------------------------------------------- 9, 8

// Toy corpus scaled to about 10^5 frames, trained with default clustering.
struct LargeCorpus {
  fs::path config;
  RunResult extract, train;
  double seconds = 0.0;
};

const LargeCorpus &Large() {
  static const LargeCorpus lc = [] {
    LargeCorpus c;
    const auto t0 = Clock::now();
    c.config = testing::WriteToyCorpus(g_scratch / "large",
                                       {.utterances = 750, .seed = 9});
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::string threads = " -j " + std::to_string(hw);
    c.extract = Run("extract -q -c " + Quote(c.config) + threads);
    c.train = Run("train -q -c " + Quote(c.config) + threads);
    c.seconds = Since(t0);
    return c;
  }();
  return lc;
}

Outcome SynthTiming() {
  const auto &lc = Large();
  if (lc.train.code) return {false, "training failed: " + lc.train.out};
  const auto mel = g_scratch / "timing.mel";
  const auto r = Run("synth -c " + Quote(lc.config) +
                     " -j 1 -t \"kar taa khoj pin sum mate kite pat\" -o " + Quote(mel));
  double secs = -1.0;
  std::istringstream in(r.out);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind("synth_seconds=", 0) == 0) secs = std::stod(line.substr(14));
  return {r.code == 0 && secs >= 0.0 && secs < 1.0,
          "8-word sentence, 1 worker: synth_seconds=" + Fmt("%.4f", secs) +
              " (limit 1.0)"};
}

Outcome ModelFootprint() {
  const auto &lc = Large();
  if (lc.extract.code || lc.train.code)
    return {false, "extract/train failed: " + lc.extract.out + lc.train.out};
  std::istringstream log(ReadFileText(lc.config.parent_path() / "work" / "train.log"));
  std::string line, frames, bytes, leaves;
  while (std::getline(log, line)) {
    auto f = Fields(line);
    if (f["event"] == "corpus") frames = f["frames"];
    if (f["event"] == "model") {
      bytes = f["model_bytes"];
      leaves = f["leaves"];
    }
  }
  if (bytes.empty()) return {false, "model_bytes not reported"};
  const double mb = std::stod(bytes) / (1024.0 * 1024.0);
  return {std::stod(frames) >= 90000 && mb < 20.0,
          "frames=" + frames + " leaves=" + leaves + " model_bytes=" + bytes + " (" +
              Fmt("%.2f", mb) + " MiB, limit 20) train_seconds=" + Fmt("%.1f", lc.seconds)};
}

// ---------------------------------------------------------------- 10

Outcome MelResolutionParity() {
  std::string detail;
  bool ok = true;
  for (int filters : {34, 80, 120}) {
    const auto dir = g_scratch / ("res" + std::to_string(filters));
    const auto cfg = testing::WriteToyCorpus(dir, {.utterances = 12, .num_filters = filters});
    const auto mel = dir / "out.mel", wav = dir / "out.wav";
    bool step_ok = true;
    for (const auto &cmd :
         {"extract -q -c " + Quote(cfg), "train -q -c " + Quote(cfg),
          "align -q -c " + Quote(cfg), "segment -q -c " + Quote(cfg),
          "synth -q -c " + Quote(cfg) + " -t \"rama pin ek\" -o " + Quote(mel) +
              " --wav " + Quote(wav)}) {
      const auto r = Run(cmd);
      if (r.code) {
        step_ok = false;
        detail += " [" + std::to_string(filters) + ": '" + cmd.substr(0, cmd.find(' ')) +
                  "' exit " + std::to_string(r.code) + "]";
        break;
      }
    }
    std::size_t width = 0;
    if (step_ok) width = vocoder::ReadMel(mel).frames.cols();
    step_ok = step_ok && width == static_cast<std::size_t>(filters) && fs::exists(wav);
    ok &= step_ok;
    detail += " " + std::to_string(filters) + ":" + (step_ok ? "ok" : "FAIL") +
              "(mel width " + std::to_string(width) + ")";
  }
  return {ok, "extract/train/align/segment/synth+wav" + detail};
}

// ---------------------------------------------------------------- 11

Outcome BitExactInterfaces() {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-23.0, 5.0);
  signal::MelSpectrogram m;
  m.num_filters = 80;
  m.frames = Matrix(100, 80);
  for (double &v : m.frames.data()) v = static_cast<float>(u(rng));
  const auto bytes = vocoder::ExportMel(m);
  const auto back = vocoder::ImportMel(bytes);
  bool round = back.frames.data() == m.frames.data() && vocoder::ExportMel(back) == bytes;

  const auto &lc = Large();
  const auto a = g_scratch / "repeat_a.mel", b = g_scratch / "repeat_b.mel";
  const std::string text = " -t \"pin sum kite\" -o ";
  const auto ra = Run("synth -q -c " + Quote(lc.config) + text + Quote(a));
  const auto rb = Run("synth -q -c " + Quote(lc.config) + " -j 4" + text + Quote(b));
  const bool same = ra.code == 0 && rb.code == 0 && ReadFileBytes(a) == ReadFileBytes(b);
  return {round && same, std::string("100x80 export/import bitwise=") +
                             (round ? "yes" : "no") +
                             " repeated synth identical=" + (same ? "yes" : "no")};
}

}  // namespace

int main(int argc, char **argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <melhts executable> [scratch dir]\n", argv[0]);
    return 2;
  }
  g_cli = fs::absolute(argv[1]);
  g_scratch = argc > 2 ? fs::path(argv[2])
                       : fs::temp_directory_path() / "melhts_acceptance";
  fs::remove_all(g_scratch);
  fs::create_directories(g_scratch);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Viterbi oracle equivalence", ViterbiOracle},
      {"Baum-Welch monotonicity", BaumWelchMonotone},
      {"segmentation recovery", SegmentationRecovery},
      {"rule-table exactness", RuleTable},
      {"HEQ distribution matching", HeqMatching},
      {"MLPG correctness", MlpgCorrectness},
      {"Griffin-Lim convergence", GriffinLimConvergence},
      {"synthesis timing", SynthTiming},
      {"model footprint", ModelFootprint},
      {"mel resolution parity", MelResolutionParity},
      {"bit-exact interfaces", BitExactInterfaces},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("criterion %2zu: %s  %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL",
                criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
