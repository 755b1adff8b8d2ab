// src/pipeline/commands.cpp

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

#include "pipeline/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <optional>
#include <set>

#include "common/error.hpp"
#include "common/fileio.hpp"
#include "common/parallel.hpp"
#include "heq/heq.hpp"
#include "hmm/align.hpp"
#include "hmm/generate.hpp"
#include "hmm/train.hpp"
#include "pipeline/manifest.hpp"
#include "segment/hybrid.hpp"
#include "signal/audio.hpp"
#include "signal/contours.hpp"
#include "signal/delta.hpp"
#include "text/context.hpp"
#include "text/htk_label.hpp"
#include "text/syllable.hpp"
#include "vocoder/mel_io.hpp"
#include "vocoder/vocoder.hpp"

namespace melhts::pipeline {

namespace fs = std::filesystem;

namespace {

void RequirePath(const fs::path &p, const std::string &key) {
  if (p.empty()) Fail(ErrorKind::kParameter, "config " + key + " is not set");
  if (!fs::exists(p))
    Fail(ErrorKind::kIo, key + ": " + p.string() + " does not exist");
}

text::Lexicon LoadLexiconFor(const PipelineConfig &c) {
  RequirePath(c.lexicon, "paths.lexicon");
  RequirePath(c.phone_classes, "paths.phone_classes");
  return text::LoadLexicon(c.lexicon, c.phone_classes);
}

CorpusManifest LoadManifestFor(const PipelineConfig &c,
                               const text::Lexicon *lexicon) {
  RequirePath(c.corpus, "paths.corpus");
  return LoadManifest(c.corpus, lexicon);
}

signal::AudioBuffer LoadAudio(const ManifestEntry &e, const PipelineConfig &c) {
  auto audio = signal::ReadWav(e.wav);
  if (audio.sample_rate_hz != c.sample_rate_hz)
    audio = signal::Resample(audio, c.sample_rate_hz);
  return audio;
}

signal::MelFilterbank Filterbank(const PipelineConfig &c, int num_filters,
                                 int rate) {
  const double fmax = std::min(c.EffectiveFmax(), rate / 2.0);
  return signal::BuildMelFilterbank(num_filters, rate, c.frames.fft_size,
                                    c.fmin_hz, fmax);
}

fs::path MelPath(const PipelineConfig &c, const std::string &id) {
  return c.MelDir() / (id + ".mel");
}

signal::MelSpectrogram LoadExtractedMel(const PipelineConfig &c,
                                        const std::string &id) {
  const auto path = MelPath(c, id);
  if (!fs::exists(path))
    Fail(ErrorKind::kIo, "utterance " + id + ": no features at " +
                             path.string() + " (run extract first)");
  auto mel = vocoder::ReadMel(path);
  if (mel.num_filters != c.num_filters || mel.sample_rate_hz != c.sample_rate_hz)
    Fail(ErrorKind::kData,
         "utterance " + id + ": features have " + std::to_string(mel.num_filters) +
             " filters at " + std::to_string(mel.sample_rate_hz) +
             " Hz, config expects " + std::to_string(c.num_filters) + " at " +
             std::to_string(c.sample_rate_hz) + " Hz (re-run extract)");
  return mel;
}

// Boundary between frames f - 1 and f: midway between their centres.
double FrameBoundaryMs(std::size_t frame, const signal::FrameSpec &s) {
  return static_cast<double>(frame) * s.frame_shift_ms +
         0.5 * (s.frame_length_ms - s.frame_shift_ms);
}

std::size_t BoundaryFrame(double ms, const signal::FrameSpec &s,
                          std::size_t num_frames) {
  const double f =
      std::round((ms - 0.5 * (s.frame_length_ms - s.frame_shift_ms)) /
                 s.frame_shift_ms);
  return static_cast<std::size_t>(
      std::clamp(f, 0.0, static_cast<double>(num_frames)));
}

/// Runs |fn| for every manifest entry on the worker pool. Failures do not
/// stop other utterances; they are logged in manifest order and the first
/// is rethrown with a count.
template <typename Fn>
void ForEachUtterance(const CommandContext &ctx, const CorpusManifest &manifest,
                      const std::string &command, Fn fn) {
  const std::size_t n = manifest.size();
  std::vector<std::optional<Error>> errors(n);
  ParallelFor(n, WorkerCount(ctx.config.workers), [&](std::size_t i) {
    try {
      fn(i, manifest.entries[i]);
    } catch (const Error &e) {
      errors[i] = e;
    } catch (const std::exception &e) {
      errors[i] = Error(ErrorKind::kInternal, e.what());
    }
  });
  std::size_t failed = 0;
  const Error *first = nullptr;
  for (std::size_t i = 0; i < n; ++i) {
    if (!errors[i]) continue;
    ++failed;
    if (!first) first = &*errors[i];
    Emit(ctx.log)("event", "error")("command", command)(
        "id", manifest.entries[i].id)("message", errors[i]->what());
  }
  if (first)
    Fail(first->kind(), std::to_string(failed) + " of " + std::to_string(n) +
                            " utterances failed; first: " + first->what());
}

struct Utterance {
  text::PhoneSequence phones;
  std::vector<text::Syllable> syllables;
  std::size_t num_frames = 0;
};

Utterance PrepareText(const ManifestEntry &e, const text::Lexicon &lexicon,
                      const PipelineConfig &c) {
  Utterance u;
  u.phones = text::ParseText(e.transcript, lexicon);
  u.syllables = text::Syllabify(u.phones, lexicon.phones(), c.split_policy);
  return u;
}

struct SegmentResult {
  hmm::AlignmentResult alignment;
  seg::BoundarySet hmm_bounds;
  seg::BoundarySet corrected;
};

SegmentResult SegmentUtterance(const PipelineConfig &c,
                               const text::PhoneSet &phone_set,
                               const hmm::PhoneModels &models,
                               const Utterance &u, const Matrix &features,
                               const signal::AudioBuffer &audio) {
  SegmentResult r;
  r.alignment = hmm::ViterbiAlign(models, features, u.phones.ids);
  r.hmm_bounds.utterance_duration_ms = audio.duration_ms();
  for (std::size_t s = 1; s < u.syllables.size(); ++s) {
    const auto frame = r.alignment.phones[u.syllables[s].first_phone].start_frame;
    r.hmm_bounds.boundaries.push_back(
        {std::min(FrameBoundaryMs(frame, c.frames), audio.duration_ms()),
         seg::BoundarySource::kHmm, u.syllables[s - 1].Name(),
         u.syllables[s].Name()});
  }
  r.corrected = seg::HybridSegment(audio, u.syllables, phone_set, r.hmm_bounds,
                                   c.segment);
  return r;
}

std::vector<text::LabelEntry> SyllableLabels(const std::vector<text::Syllable> &syl,
                                             const seg::BoundarySet &bounds) {
  std::vector<text::LabelEntry> out;
  double start = 0.0;
  for (std::size_t s = 0; s < syl.size(); ++s) {
    const double end = s + 1 < syl.size() ? bounds.boundaries[s].time_ms
                                          : bounds.utterance_duration_ms;
    out.push_back({text::MsToHtk(start), text::MsToHtk(end), syl[s].Name()});
    start = end;
  }
  return out;
}

}  // namespace

void RunExtract(const CommandContext &ctx) {
  const auto &c = ctx.config;
  const auto manifest = LoadManifestFor(c, nullptr);
  const auto fb = Filterbank(c, c.num_filters, c.sample_rate_hz);
  ForEachUtterance(ctx, manifest, "extract", [&](std::size_t, const ManifestEntry &e) {
    const auto audio = LoadAudio(e, c);
    const auto mel = signal::ComputeMelSpectrogram(audio, c.frames, fb);
    vocoder::WriteMel(MelPath(c, e.id), mel);
    const auto &ste_spec = c.segment.ste_frames;
    const auto ste = signal::ShortTermEnergy(audio, ste_spec);
    signal::WriteContourCsv(c.ContourDir() / (e.id + ".ste.csv"), ste.values,
                            ste_spec.frame_shift_ms, ste_spec.frame_length_ms / 2);
    const auto &flux_spec = c.segment.flux_frames;
    const auto flux = signal::SubBandSpectralFlux(
        signal::Magnitude(signal::Stft(audio, flux_spec)), c.segment.flux_bands,
        flux_spec, c.sample_rate_hz);
    signal::WriteContourCsv(
        c.ContourDir() / (e.id + ".sbsf.csv"), flux.values, flux_spec.frame_shift_ms,
        0.5 * (flux_spec.frame_length_ms - flux_spec.frame_shift_ms));
    Emit(ctx.log)("event", "extract")("id", e.id)("frames", mel.num_frames())(
        "num_filters", mel.num_filters);
  });
  Emit(ctx.log)("command", "extract")("utterances", manifest.size())(
      "num_filters", c.num_filters);
}

void RunTrain(const CommandContext &ctx) {
  const auto &c = ctx.config;
  const int workers = WorkerCount(c.workers);
  std::string record;
  const LogSink log = [&](const std::string &line) {
    record += line + '\n';
    if (ctx.log) ctx.log(line);
  };
  const auto started = std::chrono::steady_clock::now();

  const auto lexicon = LoadLexiconFor(c);
  const auto manifest = LoadManifestFor(c, &lexicon);
  const std::size_t n = manifest.size();

  std::vector<hmm::TrainingUtterance> corpus(n);
  std::vector<Utterance> utts(n);
  ParallelFor(n, workers, [&](std::size_t i) {
    const auto &e = manifest.entries[i];
    utts[i] = PrepareText(e, lexicon, c);
    const auto mel = LoadExtractedMel(c, e.id);
    corpus[i].id = e.id;
    corpus[i].features = signal::DeltaFeatures(mel.frames, c.delta_window);
    corpus[i].phones = utts[i].phones.ids;
    utts[i].num_frames = mel.num_frames();
  });
  std::size_t total_frames = 0;
  for (const auto &u : utts) total_frames += u.num_frames;
  Emit(log)("event", "corpus")("utterances", n)("frames", total_frames)(
      "num_filters", c.num_filters)("num_states", c.num_states)("workers", workers);

  const auto floor = hmm::VarianceFloor(corpus, c.var_floor_ratio);
  hmm::FlatStartReport flat;
  auto models = hmm::FlatStartInit(corpus, c.num_states, floor, &flat);
  for (const auto &id : flat.skipped)
    Emit(log)("event", "skip")("stage", "flat_start")("id", id)(
        "reason", "fewer frames than states");

  auto log_trace = [&](const std::string &stage, const hmm::ReestimateReport &r) {
    for (std::size_t i = 0; i < r.log_likelihood.size(); ++i)
      Emit(log)("stage", stage)("iter", i)("loglik", r.log_likelihood[i])(
          "loglik_per_frame", r.log_likelihood[i] / static_cast<double>(total_frames));
    Emit(log)("stage", stage)("chunks_used", r.chunks_used)(
        "chunks_skipped", r.chunks_skipped);
  };

  if (c.sentence_iterations > 0) {
    hmm::ReestimateReport rep;
    models = hmm::EmbeddedReestimate(
        std::move(models), corpus, hmm::UtteranceChunks(corpus), floor,
        {.iterations = c.sentence_iterations, .workers = workers}, &rep);
    log_trace("sentence", rep);
  }

  // Syllable chunks from hybrid-corrected boundaries.
  std::vector<std::vector<hmm::Chunk>> per_utt(n);
  std::vector<int> corrected_moves(n, 0);
  ParallelFor(n, workers, [&](std::size_t i) {
    const auto &u = utts[i];
    std::vector<std::size_t> sizes;
    for (const auto &s : u.syllables) sizes.push_back(s.phones.size());
    try {
      const auto audio = LoadAudio(manifest.entries[i], c);
      const auto r = SegmentUtterance(c, lexicon.phones(), models, u,
                                      corpus[i].features, audio);
      std::vector<std::size_t> bounds;
      for (std::size_t b = 0; b < r.corrected.size(); ++b) {
        bounds.push_back(BoundaryFrame(r.corrected.boundaries[b].time_ms, c.frames,
                                       u.num_frames));
        if (r.corrected.boundaries[b].time_ms != r.hmm_bounds.boundaries[b].time_ms)
          ++corrected_moves[i];
      }
      per_utt[i] = hmm::GroupChunks(i, u.num_frames, sizes, bounds, c.num_states);
    } catch (const Error &e) {
      if (e.kind() != ErrorKind::kAlignment) throw;
      per_utt[i] = {hmm::Chunk{i, 0, u.num_frames, 0, u.phones.size()}};
    }
  });
  std::vector<hmm::Chunk> chunks;
  int moved = 0;
  for (std::size_t i = 0; i < n; ++i) {
    chunks.insert(chunks.end(), per_utt[i].begin(), per_utt[i].end());
    moved += corrected_moves[i];
  }
  Emit(log)("event", "segment")("chunks", chunks.size())("boundaries_moved", moved);

  hmm::ReestimateReport rep;
  models = hmm::EmbeddedReestimate(std::move(models), corpus, chunks, floor,
                                   {.iterations = c.iterations, .workers = workers},
                                   &rep);
  log_trace("embedded", rep);

  // Final alignment for state tying and durations.
  std::vector<std::optional<hmm::AlignmentResult>> aligned(n);
  ParallelFor(n, workers, [&](std::size_t i) {
    try {
      aligned[i] = hmm::ViterbiAlign(models, corpus[i].features, corpus[i].phones);
    } catch (const Error &e) {
      if (e.kind() != ErrorKind::kAlignment) throw;
    }
  });
  std::vector<hmm::TrainingUtterance> tie_corpus;
  std::vector<hmm::AlignmentResult> alignments;
  std::vector<std::vector<text::ContextLabel>> labels;
  std::map<std::string, std::size_t> phone_frames;
  for (std::size_t i = 0; i < n; ++i) {
    if (!aligned[i]) {
      Emit(log)("event", "skip")("stage", "tying")("id", corpus[i].id)(
          "reason", "alignment infeasible");
      continue;
    }
    for (const auto &seg : aligned[i]->phones)
      phone_frames[seg.phone] += seg.end_frame - seg.start_frame;
    tie_corpus.push_back(corpus[i]);
    alignments.push_back(*aligned[i]);
    labels.push_back(text::MakeContextLabels(utts[i].phones, utts[i].syllables,
                                             lexicon.phones()));
  }
  std::set<std::string> needed;
  for (const auto &u : utts) needed.insert(u.phones.ids.begin(), u.phones.ids.end());
  std::string missing;
  for (const auto &p : needed)
    if (phone_frames[p] < static_cast<std::size_t>(c.num_states))
      missing += (missing.empty() ? "" : ", ") + p + " (" +
                 std::to_string(phone_frames[p]) + " frames)";
  if (!missing.empty())
    Fail(ErrorKind::kData, "insufficient training data for phone(s): " + missing);

  hmm::AcousticModel model;
  model.static_dim = c.num_filters;
  model.delta_window = c.delta_window;
  model.num_states = c.num_states;
  model.frame_shift_ms = c.frames.frame_shift_ms;
  model.sample_rate_hz = c.sample_rate_hz;
  model.num_filters = c.num_filters;
  model.log_floor = signal::kLogFloor;
  model.phone_set = lexicon.phones();
  model.var_floor = floor;
  model.monophones = models;
  hmm::TieStates(tie_corpus, alignments, labels,
                 {.cluster = c.cluster, .workers = workers}, &model);

  const auto path = c.ModelPath();
  hmm::SaveModel(path, model);
  const auto seconds = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - started).count();
  Emit(log)("event", "model")("path", path.string())(
      "model_bytes", fs::file_size(path))("trees", model.trees.size())(
      "leaves", model.leaf_pdfs.size())("train_seconds", seconds);
  WriteFileAtomic(c.work_dir / "train.log", record);
}

void RunSegment(const CommandContext &ctx) {
  const auto &c = ctx.config;
  const auto lexicon = LoadLexiconFor(c);
  const auto manifest = LoadManifestFor(c, &lexicon);
  RequirePath(c.ModelPath(), "paths.model");
  const auto model = hmm::LoadModel(c.ModelPath());
  ForEachUtterance(ctx, manifest, "segment", [&](std::size_t, const ManifestEntry &e) {
    auto u = PrepareText(e, lexicon, c);
    const auto mel = LoadExtractedMel(c, e.id);
    const auto features = signal::DeltaFeatures(mel.frames, model.delta_window);
    const auto audio = LoadAudio(e, c);
    const auto r = SegmentUtterance(c, lexicon.phones(), model.monophones, u,
                                    features, audio);
    text::WriteHtkLabels(c.LabelDir() / (e.id + ".lab"),
                         SyllableLabels(u.syllables, r.corrected));
    int moved = 0;
    for (std::size_t b = 0; b < r.corrected.size(); ++b)
      moved += r.corrected.boundaries[b].time_ms != r.hmm_bounds.boundaries[b].time_ms;
    Emit(ctx.log)("event", "segment")("id", e.id)("syllables", u.syllables.size())(
        "boundaries_moved", moved);
  });
  Emit(ctx.log)("command", "segment")("utterances", manifest.size());
}

void RunAlign(const CommandContext &ctx) {
  const auto &c = ctx.config;
  const auto lexicon = LoadLexiconFor(c);
  const auto manifest = LoadManifestFor(c, &lexicon);
  RequirePath(c.ModelPath(), "paths.model");
  const auto model = hmm::LoadModel(c.ModelPath());
  ForEachUtterance(ctx, manifest, "align", [&](std::size_t, const ManifestEntry &e) {
    const auto u = PrepareText(e, lexicon, c);
    const auto mel = LoadExtractedMel(c, e.id);
    const auto features = signal::DeltaFeatures(mel.frames, model.delta_window);
    const auto a = hmm::ViterbiAlign(model.monophones, features, u.phones.ids);
    std::vector<text::LabelEntry> entries;
    for (std::size_t p = 0; p < a.phones.size(); ++p) {
      const auto &seg = a.phones[p];
      const double start = p == 0 ? 0.0 : FrameBoundaryMs(seg.start_frame, c.frames);
      // The last phone runs to the end of the last analysis frame.
      const double end =
          p + 1 == a.phones.size()
              ? static_cast<double>(mel.num_frames() - 1) * c.frames.frame_shift_ms +
                    c.frames.frame_length_ms
              : FrameBoundaryMs(seg.end_frame, c.frames);
      entries.push_back({text::MsToHtk(start), text::MsToHtk(end), seg.phone});
    }
    text::WriteHtkLabels(c.AlignDir() / (e.id + ".lab"), entries);
    Emit(ctx.log)("event", "align")("id", e.id)("phones", a.phones.size())(
        "loglik", a.log_likelihood);
  });
  Emit(ctx.log)("command", "align")("utterances", manifest.size());
}

Synthesizer::Synthesizer(const PipelineConfig &config, hmm::AcousticModel model,
                         text::Lexicon lexicon)
    : config_(config), model_(std::move(model)), lexicon_(std::move(lexicon)) {}

Synthesizer Synthesizer::Load(const PipelineConfig &config) {
  RequirePath(config.ModelPath(), "paths.model");
  auto model = hmm::LoadModel(config.ModelPath());
  return Synthesizer(config, std::move(model), LoadLexiconFor(config));
}

signal::MelSpectrogram Synthesizer::Synthesize(const std::string &text) const {
  const auto phones = text::ParseText(text, lexicon_);
  const auto syllables =
      text::Syllabify(phones, lexicon_.phones(), config_.split_policy);
  const auto labels =
      text::MakeContextLabels(phones, syllables, lexicon_.phones());
  return hmm::GenerateParameters(labels, model_, config_.generation);
}

double RunSynth(const CommandContext &ctx, const SynthRequest &request) {
  const auto &c = ctx.config;
  Require(!request.mel_out.empty(), ErrorKind::kParameter, "no mel output path");
  const auto load_start = std::chrono::steady_clock::now();
  const auto synth = Synthesizer::Load(c);
  const auto start = std::chrono::steady_clock::now();
  const auto mel = synth.Synthesize(request.text);
  const auto end = std::chrono::steady_clock::now();
  const double seconds = std::chrono::duration<double>(end - start).count();
  vocoder::WriteMel(request.mel_out, mel);
  Emit(ctx.log)("event", "synth")("frames", mel.num_frames())(
      "num_filters", mel.num_filters)("load_seconds",
                                      std::chrono::duration<double>(start - load_start).count());
  Emit(ctx.log)("synth_seconds", seconds);
  if (!request.wav_out.empty()) RunInvert(ctx, request.mel_out, request.wav_out, -1);
  return seconds;
}

void RunHeqFit(const CommandContext &ctx, const std::vector<fs::path> &sources,
               const std::vector<fs::path> &targets, const fs::path &lut_out) {
  const auto &c = ctx.config;
  Require(sources.empty() == targets.empty(), ErrorKind::kParameter,
          "give both source and target mel files, or neither");
  std::vector<signal::MelSpectrogram> src, tgt;
  if (sources.empty()) {
    const auto synth = Synthesizer::Load(c);
    const auto manifest = LoadManifestFor(c, nullptr);
    src.resize(manifest.size());
    tgt.resize(manifest.size());
    ForEachUtterance(ctx, manifest, "heq-fit", [&](std::size_t i, const ManifestEntry &e) {
      src[i] = synth.Synthesize(e.transcript);
      vocoder::WriteMel(c.GeneratedDir() / (e.id + ".mel"), src[i]);
      tgt[i] = LoadExtractedMel(c, e.id);
    });
  } else {
    for (const auto &p : sources) src.push_back(vocoder::ReadMel(p));
    for (const auto &p : targets) tgt.push_back(vocoder::ReadMel(p));
  }
  const auto lut = heq::BuildLuts(heq::EstimateHistograms(src, c.heq_bins),
                                  heq::EstimateHistograms(tgt, c.heq_bins));
  const fs::path out = lut_out.empty() ? c.work_dir / "heq.lut" : lut_out;
  heq::WriteLut(out, lut);
  auto csv = out;
  csv.replace_extension(".csv");
  heq::WriteLutCsv(csv, lut);
  Emit(ctx.log)("command", "heq-fit")("sources", src.size())("targets", tgt.size())(
      "bins", c.heq_bins)("coefficients", lut.maps.size())("lut", out.string());
}

void RunHeqApply(const CommandContext &ctx, const fs::path &lut_path,
                 const fs::path &mel_in, const fs::path &mel_out) {
  const auto lut = heq::ReadLut(lut_path);
  const auto mel = vocoder::ReadMel(mel_in);
  Require(lut.maps.size() == static_cast<std::size_t>(mel.num_filters),
          ErrorKind::kData,
          "lut has " + std::to_string(lut.maps.size()) + " coefficients, mel has " +
              std::to_string(mel.num_filters));
  const auto mapped = heq::ApplyHeq(mel, lut);
  vocoder::WriteMel(mel_out, mapped);
  Emit(ctx.log)("command", "heq-apply")("frames", mapped.num_frames())(
      "out", mel_out.string());
}

void RunInvert(const CommandContext &ctx, const fs::path &mel_in,
               const fs::path &wav_out, int iterations) {
  const auto &c = ctx.config;
  const auto mel = vocoder::ReadMel(mel_in);
  Require(signal::IsSupportedSampleRate(mel.sample_rate_hz), ErrorKind::kData,
          mel_in.string() + ": unsupported sample rate " +
              std::to_string(mel.sample_rate_hz));
  const auto fb = Filterbank(c, mel.num_filters, mel.sample_rate_hz);
  signal::FrameSpec spec = c.frames;
  spec.frame_shift_ms = mel.frame_shift_ms;
  const auto mag = vocoder::MelToLinear(mel, fb);
  vocoder::GriffinLimOptions opts;
  opts.iterations = iterations >= 0 ? iterations : c.griffin_lim_iterations;
  opts.seed = c.seed;
  double sc = 0.0;
  opts.observer = [&](int, double v) { sc = v; };
  auto audio = vocoder::GriffinLim(mag, spec, mel.sample_rate_hz, opts);
  if (audio.samples.empty()) audio.samples.assign(1, 0.0);
  signal::WriteWav(wav_out, audio);
  Emit(ctx.log)("command", "invert")("iterations", opts.iterations)(
      "spectral_convergence", sc)("samples", audio.samples.size());
}

double EvalMelL1(const fs::path &a, const fs::path &b) {
  return vocoder::MelL1(vocoder::ReadMel(a), vocoder::ReadMel(b));
}

double EvalLabelAccuracy(const fs::path &reference, const fs::path &hypothesis,
                         double tolerance_ms) {
  Require(tolerance_ms >= 0.0, ErrorKind::kParameter, "tolerance must be >= 0");
  const auto ref = text::ReadHtkLabels(reference);
  const auto hyp = text::ReadHtkLabels(hypothesis);
  Require(ref.size() == hyp.size(), ErrorKind::kData,
          "label files differ in length: " + std::to_string(ref.size()) + " vs " +
              std::to_string(hyp.size()) + " entries");
  if (ref.size() < 2) return 100.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i + 1 < ref.size(); ++i)
    hits += std::abs(text::HtkToMs(ref[i].end) - text::HtkToMs(hyp[i].end)) <=
            tolerance_ms + 1e-9;
  return 100.0 * static_cast<double>(hits) / static_cast<double>(ref.size() - 1);
}

}  // namespace melhts::pipeline
