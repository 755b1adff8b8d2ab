// src/capi/melhts_capi.cpp

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

#include "melhts/melhts.h"

#include <exception>
#include <new>
#include <string>
#include <vector>

#include "common/error.hpp"
#include "pipeline/commands.hpp"
#include "pipeline/config.hpp"
#include "vocoder/mel_io.hpp"
#include "vocoder/vocoder.hpp"

struct melhts_config {
  melhts::pipeline::CommandContext ctx;
  std::string dump;
};

struct melhts_synth {
  melhts::pipeline::Synthesizer synth;
};

struct melhts_mel {
  melhts::signal::MelSpectrogram mel;
};

namespace {

using melhts::Error;
using melhts::ErrorKind;

thread_local std::string g_last_error;

melhts_status StatusOf(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParameter: return MELHTS_ERR_CONFIG;
    case ErrorKind::kIo: return MELHTS_ERR_IO;
    default: return MELHTS_ERR_DATA;
  }
}

template <typename Fn>
melhts_status Guard(Fn fn) {
  try {
    fn();
    g_last_error.clear();
    return MELHTS_OK;
  } catch (const Error &e) {
    g_last_error = e.what();
    return StatusOf(e.kind());
  } catch (const std::bad_alloc &) {
    g_last_error = "out of memory";
  } catch (const std::exception &e) {
    g_last_error = e.what();
  }
  return MELHTS_ERR_DATA;
}

void NotNull(const void *p, const char *what) {
  if (!p) melhts::Fail(ErrorKind::kParameter, std::string(what) + " is NULL");
}

std::vector<std::filesystem::path> Paths(const char *const *items, size_t n) {
  std::vector<std::filesystem::path> out;
  if (n) NotNull(items, "path list");
  for (size_t i = 0; i < n; ++i) {
    NotNull(items[i], "path");
    out.emplace_back(items[i]);
  }
  return out;
}

}  // namespace

extern "C" {

const char *melhts_version(void) { return "0.3.0"; }

const char *melhts_last_error(void) { return g_last_error.c_str(); }

melhts_status melhts_config_load(const char *path, const char *const *overrides,
                                 size_t num_overrides, melhts_config **out) {
  return Guard([&] {
    NotNull(path, "config path");
    NotNull(out, "output handle");
    *out = nullptr;
    melhts::pipeline::Overrides ov;
    if (num_overrides) NotNull(overrides, "override list");
    for (size_t i = 0; i < num_overrides; ++i) {
      NotNull(overrides[i], "override");
      const std::string s = overrides[i];
      const auto eq = s.find('=');
      if (eq == std::string::npos || eq == 0)
        melhts::Fail(ErrorKind::kParameter,
                     "override '" + s + "' is not section.key=value");
      ov.emplace_back(s.substr(0, eq), s.substr(eq + 1));
    }
    auto *c = new melhts_config;
    try {
      c->ctx.config = melhts::pipeline::LoadConfig(path, ov);
    } catch (...) {
      delete c;
      throw;
    }
    *out = c;
  });
}

void melhts_config_free(melhts_config *config) { delete config; }

void melhts_config_set_log(melhts_config *config, melhts_log_fn fn, void *user) {
  if (!config) return;
  if (!fn) {
    config->ctx.log = nullptr;
    return;
  }
  config->ctx.log = [fn, user](const std::string &line) { fn(line.c_str(), user); };
}

const char *melhts_config_dump(melhts_config *config) {
  if (!config) return "";
  config->dump = melhts::pipeline::FormatConfig(config->ctx.config);
  return config->dump.c_str();
}

melhts_status melhts_extract(const melhts_config *config) {
  return Guard([&] {
    NotNull(config, "config");
    melhts::pipeline::RunExtract(config->ctx);
  });
}

melhts_status melhts_train(const melhts_config *config) {
  return Guard([&] {
    NotNull(config, "config");
    melhts::pipeline::RunTrain(config->ctx);
  });
}

melhts_status melhts_segment(const melhts_config *config) {
  return Guard([&] {
    NotNull(config, "config");
    melhts::pipeline::RunSegment(config->ctx);
  });
}

melhts_status melhts_align(const melhts_config *config) {
  return Guard([&] {
    NotNull(config, "config");
    melhts::pipeline::RunAlign(config->ctx);
  });
}

melhts_status melhts_synth_command(const melhts_config *config, const char *text,
                                   const char *mel_path, const char *wav_path,
                                   double *seconds) {
  return Guard([&] {
    NotNull(config, "config");
    NotNull(mel_path, "mel path");
    melhts::pipeline::SynthRequest req;
    req.text = text ? text : "";
    req.mel_out = mel_path;
    if (wav_path) req.wav_out = wav_path;
    const double s = melhts::pipeline::RunSynth(config->ctx, req);
    if (seconds) *seconds = s;
  });
}

melhts_status melhts_heq_fit(const melhts_config *config,
                             const char *const *sources, size_t num_sources,
                             const char *const *targets, size_t num_targets,
                             const char *lut_path) {
  return Guard([&] {
    NotNull(config, "config");
    melhts::pipeline::RunHeqFit(config->ctx, Paths(sources, num_sources),
                                Paths(targets, num_targets),
                                lut_path ? lut_path : "");
  });
}

melhts_status melhts_heq_apply(const melhts_config *config, const char *lut_path,
                               const char *mel_in, const char *mel_out) {
  return Guard([&] {
    NotNull(config, "config");
    NotNull(lut_path, "lut path");
    NotNull(mel_in, "input mel path");
    NotNull(mel_out, "output mel path");
    melhts::pipeline::RunHeqApply(config->ctx, lut_path, mel_in, mel_out);
  });
}

melhts_status melhts_invert(const melhts_config *config, const char *mel_in,
                            const char *wav_out, int iterations) {
  return Guard([&] {
    NotNull(config, "config");
    NotNull(mel_in, "input mel path");
    NotNull(wav_out, "output wav path");
    melhts::pipeline::RunInvert(config->ctx, mel_in, wav_out, iterations);
  });
}

melhts_status melhts_eval_mel(const char *mel_a, const char *mel_b, double *l1) {
  return Guard([&] {
    NotNull(mel_a, "mel path");
    NotNull(mel_b, "mel path");
    NotNull(l1, "output");
    *l1 = melhts::pipeline::EvalMelL1(mel_a, mel_b);
  });
}

melhts_status melhts_eval_labels(const char *reference, const char *hypothesis,
                                 double tolerance_ms, double *percent) {
  return Guard([&] {
    NotNull(reference, "reference path");
    NotNull(hypothesis, "hypothesis path");
    NotNull(percent, "output");
    *percent = melhts::pipeline::EvalLabelAccuracy(reference, hypothesis,
                                                   tolerance_ms);
  });
}

melhts_status melhts_synth_open(const melhts_config *config, melhts_synth **out) {
  return Guard([&] {
    NotNull(config, "config");
    NotNull(out, "output handle");
    *out = nullptr;
    *out = new melhts_synth{melhts::pipeline::Synthesizer::Load(config->ctx.config)};
  });
}

void melhts_synth_free(melhts_synth *synth) { delete synth; }

melhts_status melhts_synth_text(const melhts_synth *synth, const char *text,
                                melhts_mel **out) {
  return Guard([&] {
    NotNull(synth, "synthesizer");
    NotNull(out, "output handle");
    *out = nullptr;
    *out = new melhts_mel{synth->synth.Synthesize(text ? text : "")};
  });
}

melhts_status melhts_mel_read(const char *path, melhts_mel **out) {
  return Guard([&] {
    NotNull(path, "path");
    NotNull(out, "output handle");
    *out = nullptr;
    *out = new melhts_mel{melhts::vocoder::ReadMel(path)};
  });
}

melhts_status melhts_mel_write(const melhts_mel *mel, const char *path) {
  return Guard([&] {
    NotNull(mel, "mel");
    NotNull(path, "path");
    melhts::vocoder::WriteMel(path, mel->mel);
  });
}

void melhts_mel_free(melhts_mel *mel) { delete mel; }

size_t melhts_mel_frames(const melhts_mel *mel) {
  return mel ? mel->mel.frames.rows() : 0;
}

size_t melhts_mel_filters(const melhts_mel *mel) {
  return mel ? mel->mel.frames.cols() : 0;
}

double melhts_mel_frame_shift_ms(const melhts_mel *mel) {
  return mel ? mel->mel.frame_shift_ms : 0.0;
}

int melhts_mel_sample_rate(const melhts_mel *mel) {
  return mel ? mel->mel.sample_rate_hz : 0;
}

const double *melhts_mel_data(const melhts_mel *mel) {
  return mel && !mel->mel.frames.empty() ? mel->mel.frames.data().data() : nullptr;
}

melhts_status melhts_mel_l1(const melhts_mel *a, const melhts_mel *b, double *out) {
  return Guard([&] {
    NotNull(a, "mel");
    NotNull(b, "mel");
    NotNull(out, "output");
    *out = melhts::vocoder::MelL1(a->mel, b->mel);
  });
}

}  // extern "C"
