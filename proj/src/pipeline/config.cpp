// src/pipeline/config.cpp

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

#include "pipeline/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>

#include "common/error.hpp"
#include "common/fileio.hpp"
#include "signal/audio.hpp"

namespace melhts::pipeline {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void BadValue(const std::string &key, const std::string &value,
                           const std::string &expect) {
  Fail(ErrorKind::kParameter,
       "config " + key + " = '" + value + "': expected " + expect);
}

template <typename T>
T ParseNumber(const std::string &key, const std::string &value) {
  T out{};
  const char *first = value.data();
  const char *last = first + value.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last)
    BadValue(key, value, std::is_integral_v<T> ? "an integer" : "a number");
  return out;
}

using Setter = std::function<void(PipelineConfig &, const std::string &key,
                                  const std::string &value,
                                  const fs::path &base)>;

template <typename T>
Setter Number(T PipelineConfig::*field) {
  return [field](PipelineConfig &c, const std::string &k, const std::string &v,
                 const fs::path &) { c.*field = ParseNumber<T>(k, v); };
}

template <typename T>
Setter Nested(std::function<T &(PipelineConfig &)> get) {
  return [get](PipelineConfig &c, const std::string &k, const std::string &v,
               const fs::path &) { get(c) = ParseNumber<T>(k, v); };
}

Setter Path(fs::path PipelineConfig::*field) {
  return [field](PipelineConfig &c, const std::string &, const std::string &v,
                 const fs::path &base) {
    fs::path p(v);
    c.*field = p.is_absolute() || p.empty() ? p : base / p;
  };
}

const std::map<std::string, Setter> &Setters() {
  static const std::map<std::string, Setter> table = {
      {"audio.sample_rate", Number(&PipelineConfig::sample_rate_hz)},
      {"frames.frame_length_ms",
       Nested<double>([](PipelineConfig &c) -> double & { return c.frames.frame_length_ms; })},
      {"frames.frame_shift_ms",
       Nested<double>([](PipelineConfig &c) -> double & { return c.frames.frame_shift_ms; })},
      {"frames.fft_size",
       Nested<int>([](PipelineConfig &c) -> int & { return c.frames.fft_size; })},
      {"frames.window",
       [](PipelineConfig &c, const std::string &k, const std::string &v, const fs::path &) {
         if (v == "hann") c.frames.window = signal::WindowType::kHann;
         else if (v == "hamming") c.frames.window = signal::WindowType::kHamming;
         else if (v == "rect") c.frames.window = signal::WindowType::kRect;
         else BadValue(k, v, "hann, hamming or rect");
       }},
      {"mel.num_filters", Number(&PipelineConfig::num_filters)},
      {"mel.fmin_hz", Number(&PipelineConfig::fmin_hz)},
      {"mel.fmax_hz", Number(&PipelineConfig::fmax_hz)},
      {"segment.ste_frame_ms",
       Nested<double>([](PipelineConfig &c) -> double & { return c.segment.ste_frames.frame_length_ms; })},
      {"segment.flux_frame_ms",
       Nested<double>([](PipelineConfig &c) -> double & { return c.segment.flux_frames.frame_length_ms; })},
      {"segment.smoothing_width",
       Nested<int>([](PipelineConfig &c) -> int & { return c.segment.smoothing_width; })},
      {"segment.wsf",
       Nested<int>([](PipelineConfig &c) -> int & { return c.segment.gd.wsf; })},
      {"segment.threshold_ratio",
       Nested<double>([](PipelineConfig &c) -> double & { return c.segment.threshold_ratio; })},
      {"segment.min_separation_ms",
       Nested<double>([](PipelineConfig &c) -> double & { return c.segment.min_separation_ms; })},
      {"segment.snap_window_ms",
       Nested<double>([](PipelineConfig &c) -> double & { return c.segment.snap_window_ms; })},
      {"segment.split_policy",
       [](PipelineConfig &c, const std::string &k, const std::string &v, const fs::path &) {
         if (v == "single_onset") c.split_policy = text::SplitPolicy::kSingleOnset;
         else if (v == "maximal_onset") c.split_policy = text::SplitPolicy::kMaximalOnset;
         else BadValue(k, v, "single_onset or maximal_onset");
       }},
      {"hmm.num_states", Number(&PipelineConfig::num_states)},
      {"hmm.delta_window", Number(&PipelineConfig::delta_window)},
      {"hmm.sentence_iterations", Number(&PipelineConfig::sentence_iterations)},
      {"hmm.iterations", Number(&PipelineConfig::iterations)},
      {"hmm.var_floor_ratio", Number(&PipelineConfig::var_floor_ratio)},
      {"hmm.min_occupancy",
       Nested<double>([](PipelineConfig &c) -> double & { return c.cluster.min_occupancy; })},
      {"hmm.min_gain",
       Nested<double>([](PipelineConfig &c) -> double & { return c.cluster.min_gain; })},
      {"hmm.mdl_factor",
       Nested<double>([](PipelineConfig &c) -> double & { return c.cluster.mdl_factor; })},
      {"hmm.speaking_rate",
       Nested<double>([](PipelineConfig &c) -> double & { return c.generation.speaking_rate; })},
      {"hmm.smoothing",
       [](PipelineConfig &c, const std::string &k, const std::string &v, const fs::path &) {
         if (v == "mlpg") c.generation.smoothing = hmm::Smoothing::kMlpg;
         else if (v == "none") c.generation.smoothing = hmm::Smoothing::kNone;
         else BadValue(k, v, "mlpg or none");
       }},
      {"heq.bins", Number(&PipelineConfig::heq_bins)},
      {"vocoder.griffin_lim_iterations", Number(&PipelineConfig::griffin_lim_iterations)},
      {"vocoder.seed", Number(&PipelineConfig::seed)},
      {"run.workers", Number(&PipelineConfig::workers)},
      {"paths.corpus", Path(&PipelineConfig::corpus)},
      {"paths.lexicon", Path(&PipelineConfig::lexicon)},
      {"paths.phone_classes", Path(&PipelineConfig::phone_classes)},
      {"paths.work_dir", Path(&PipelineConfig::work_dir)},
      {"paths.model", Path(&PipelineConfig::model)},
  };
  return table;
}

void Apply(PipelineConfig &c, const std::string &key, const std::string &value,
           const fs::path &base) {
  auto it = Setters().find(key);
  if (it == Setters().end())
    Fail(ErrorKind::kParameter, "unknown config key '" + key + "'");
  it->second(c, key, value, base);
}

const char *WindowName(signal::WindowType w) {
  switch (w) {
    case signal::WindowType::kHamming: return "hamming";
    case signal::WindowType::kRect: return "rect";
    default: return "hann";
  }
}

void Check(bool ok, const std::string &key, const std::string &expect) {
  if (!ok) Fail(ErrorKind::kParameter, "config " + key + ": must be " + expect);
}

}  // namespace

fs::path PipelineConfig::ModelPath() const {
  return model.empty() ? work_dir / "model.bin" : model;
}

PipelineConfig ParseConfig(const std::string &text, const fs::path &base_dir,
                           const Overrides &overrides) {
  boost::property_tree::ptree tree;
  std::istringstream in(text);
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error &e) {
    Fail(ErrorKind::kParameter,
         "config line " + std::to_string(e.line()) + ": " + e.message());
  }
  PipelineConfig c;
  c.work_dir = base_dir / "work";
  for (const auto &[section, entries] : tree) {
    if (entries.empty() && !entries.data().empty())
      Fail(ErrorKind::kParameter,
           "config key '" + section + "' must be inside a [section]");
    for (const auto &[key, value] : entries)
      Apply(c, section + "." + key, value.data(), base_dir);
  }
  // Flag overrides are relative to the working directory.
  for (const auto &[key, value] : overrides) Apply(c, key, value, fs::current_path());
  c.segment.ste_frames.frame_shift_ms = c.frames.frame_shift_ms;
  c.segment.flux_frames.frame_shift_ms = c.frames.frame_shift_ms;
  c.segment.ste_frames.fft_size = c.frames.fft_size;
  c.segment.flux_frames.fft_size = c.frames.fft_size;
  ValidateConfig(c);
  return c;
}

PipelineConfig LoadConfig(const fs::path &path, const Overrides &overrides) {
  std::string text;
  try {
    text = ReadFileText(path);
  } catch (const Error &e) {
    Fail(ErrorKind::kParameter, "cannot read config: " + std::string(e.what()));
  }
  return ParseConfig(text, fs::absolute(path).parent_path(), overrides);
}

void ValidateConfig(const PipelineConfig &c) {
  Check(signal::IsSupportedSampleRate(c.sample_rate_hz), "audio.sample_rate",
        "16000, 22050, 44100 or 48000");
  try {
    signal::ValidateFrameSpec(c.frames, c.sample_rate_hz);
    signal::ValidateFrameSpec(c.segment.ste_frames, c.sample_rate_hz);
    signal::ValidateFrameSpec(c.segment.flux_frames, c.sample_rate_hz);
  } catch (const Error &e) {
    Fail(ErrorKind::kParameter, std::string("config [frames]/[segment]: ") + e.what());
  }
  Check(c.num_filters >= 1, "mel.num_filters", "positive");
  Check(c.fmin_hz >= 0.0 && c.EffectiveFmax() > c.fmin_hz &&
            c.EffectiveFmax() <= c.sample_rate_hz / 2.0,
        "mel.fmin_hz/fmax_hz", "0 <= fmin < fmax <= sample_rate / 2");
  Check(c.segment.smoothing_width >= 1, "segment.smoothing_width", ">= 1");
  Check(c.segment.gd.wsf >= 1, "segment.wsf", ">= 1");
  Check(c.segment.threshold_ratio >= 0.0 && c.segment.threshold_ratio < 1.0,
        "segment.threshold_ratio", "in [0, 1)");
  Check(c.segment.min_separation_ms >= 0.0, "segment.min_separation_ms", ">= 0");
  Check(c.segment.snap_window_ms >= 0.0, "segment.snap_window_ms", ">= 0");
  Check(c.num_states >= 1 && c.num_states <= 16, "hmm.num_states", "in [1, 16]");
  Check(c.delta_window >= 1 && c.delta_window <= 8, "hmm.delta_window", "in [1, 8]");
  Check(c.sentence_iterations >= 0, "hmm.sentence_iterations", ">= 0");
  Check(c.iterations >= 0, "hmm.iterations", ">= 0");
  Check(c.var_floor_ratio > 0.0 && c.var_floor_ratio < 1.0, "hmm.var_floor_ratio",
        "in (0, 1)");
  Check(c.cluster.min_occupancy >= 0.0, "hmm.min_occupancy", ">= 0");
  Check(c.cluster.min_gain >= 0.0, "hmm.min_gain", ">= 0");
  Check(c.cluster.mdl_factor >= 0.0, "hmm.mdl_factor", ">= 0");
  Check(c.generation.speaking_rate > 0.0, "hmm.speaking_rate", "positive");
  Check(c.heq_bins >= 2, "heq.bins", ">= 2");
  Check(c.griffin_lim_iterations >= 0, "vocoder.griffin_lim_iterations", ">= 0");
  Check(c.workers >= 1, "run.workers", ">= 1");
}

namespace {

std::string Num(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string FormatConfig(const PipelineConfig &c) {
  std::ostringstream o;
  o << "[audio]\nsample_rate = " << c.sample_rate_hz << "\n\n"
    << "[frames]\nframe_length_ms = " << Num(c.frames.frame_length_ms)
    << "\nframe_shift_ms = " << Num(c.frames.frame_shift_ms)
    << "\nfft_size = " << c.frames.fft_size
    << "\nwindow = " << WindowName(c.frames.window) << "\n\n"
    << "[mel]\nnum_filters = " << c.num_filters << "\nfmin_hz = " << Num(c.fmin_hz)
    << "\nfmax_hz = " << Num(c.fmax_hz) << "\n\n"
    << "[segment]\nste_frame_ms = " << Num(c.segment.ste_frames.frame_length_ms)
    << "\nflux_frame_ms = " << Num(c.segment.flux_frames.frame_length_ms)
    << "\nsmoothing_width = " << c.segment.smoothing_width
    << "\nwsf = " << c.segment.gd.wsf
    << "\nthreshold_ratio = " << Num(c.segment.threshold_ratio)
    << "\nmin_separation_ms = " << Num(c.segment.min_separation_ms)
    << "\nsnap_window_ms = " << Num(c.segment.snap_window_ms)
    << "\nsplit_policy = "
    << (c.split_policy == text::SplitPolicy::kSingleOnset ? "single_onset"
                                                          : "maximal_onset")
    << "\n\n"
    << "[hmm]\nnum_states = " << c.num_states << "\ndelta_window = " << c.delta_window
    << "\nsentence_iterations = " << c.sentence_iterations
    << "\niterations = " << c.iterations
    << "\nvar_floor_ratio = " << Num(c.var_floor_ratio)
    << "\nmin_occupancy = " << Num(c.cluster.min_occupancy)
    << "\nmin_gain = " << Num(c.cluster.min_gain)
    << "\nmdl_factor = " << Num(c.cluster.mdl_factor)
    << "\nspeaking_rate = " << Num(c.generation.speaking_rate)
    << "\nsmoothing = "
    << (c.generation.smoothing == hmm::Smoothing::kMlpg ? "mlpg" : "none") << "\n\n"
    << "[heq]\nbins = " << c.heq_bins << "\n\n"
    << "[vocoder]\ngriffin_lim_iterations = " << c.griffin_lim_iterations
    << "\nseed = " << c.seed << "\n\n"
    << "[run]\nworkers = " << c.workers << "\n\n"
    << "[paths]\ncorpus = " << c.corpus.string()
    << "\nlexicon = " << c.lexicon.string()
    << "\nphone_classes = " << c.phone_classes.string()
    << "\nwork_dir = " << c.work_dir.string()
    << "\nmodel = " << c.ModelPath().string() << "\n";
  return o.str();
}

int WorkerCount(int configured) {
  int n = std::max(configured, 1);
  if (const char *env = std::getenv("MELHTS_THREADS")) {
    int cap = 0;
    const std::string s(env);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), cap);
    if (ec == std::errc() && ptr == s.data() + s.size() && cap > 0)
      n = std::min(n, cap);
  }
  return n;
}

}  // namespace melhts::pipeline
