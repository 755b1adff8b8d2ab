// tools/melhts_cli.cpp

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

// melhts: batch front end over the C API.
//
//   melhts <extract|segment|train|align|synth|heq-fit|heq-apply|invert|eval>
//          --config <path> [--set section.key=value ...] [options]
//
// Exit codes: 0 success, 1 config error, 2 I/O error, 3 data error.

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "melhts/melhts.h"

namespace {

void PrintLine(const char *line, void *) {
  std::fputs(line, stdout);
  std::fputc('\n', stdout);
  std::fflush(stdout);
}

int Report(melhts_status status) {
  if (status != MELHTS_OK)
    std::fprintf(stderr, "melhts: error: %s\n", melhts_last_error());
  return static_cast<int>(status);
}

struct ConfigDeleter {
  void operator()(melhts_config *c) const { melhts_config_free(c); }
};
using ConfigPtr = std::unique_ptr<melhts_config, ConfigDeleter>;

std::vector<const char *> CStrings(const std::vector<std::string> &v) {
  std::vector<const char *> out;
  for (const auto &s : v) out.push_back(s.c_str());
  return out;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"mel-spectrogram HMM synthesis toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(melhts_version()));

  std::string config_path;
  std::vector<std::string> overrides;
  int threads = 0;
  bool quiet = false;
  bool dump_config = false;

  auto add_common = [&](CLI::App *cmd, bool need_config) {
    auto *opt = cmd->add_option("--config,-c", config_path, "INI config file");
    if (need_config) opt->required()->check(CLI::ExistingFile);
    cmd->add_option("--set", overrides, "override as section.key=value")
        ->take_all();
    cmd->add_option("--threads,-j", threads, "worker pool width")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--quiet,-q", quiet, "suppress log lines");
    cmd->add_flag("--dump-config", dump_config,
                  "print the effective config before running");
  };

  auto *extract = app.add_subcommand("extract", "mel and contour features per utterance");
  auto *segment = app.add_subcommand("segment", "hybrid syllable segmentation labels");
  auto *train = app.add_subcommand("train", "train the acoustic model");
  auto *align = app.add_subcommand("align", "phone-level forced alignment labels");
  for (auto *c : {extract, segment, train, align}) add_common(c, true);

  auto *synth = app.add_subcommand("synth", "text to mel (and optional audio)");
  add_common(synth, true);
  std::string text, mel_out, wav_out;
  synth->add_option("--text,-t", text, "input sentence")->required();
  synth->add_option("--out,-o", mel_out, "output mel file")->required();
  synth->add_option("--wav", wav_out, "also write audio via Griffin-Lim");

  auto *heq_fit = app.add_subcommand("heq-fit", "fit a histogram equalization table");
  add_common(heq_fit, true);
  std::vector<std::string> sources, targets;
  std::string lut_out;
  heq_fit->add_option("--source", sources, "source mel files")->check(CLI::ExistingFile);
  heq_fit->add_option("--target", targets, "target mel files")->check(CLI::ExistingFile);
  heq_fit->add_option("--out,-o", lut_out, "output table (default <work_dir>/heq.lut)");

  auto *heq_apply = app.add_subcommand("heq-apply", "map a mel file through a table");
  add_common(heq_apply, true);
  std::string lut_in, mel_in;
  heq_apply->add_option("--lut", lut_in, "table from heq-fit")->required();
  heq_apply->add_option("--in,-i", mel_in, "input mel")->required();
  heq_apply->add_option("--out,-o", mel_out, "output mel")->required();

  auto *invert = app.add_subcommand("invert", "mel to audio with Griffin-Lim");
  add_common(invert, true);
  int iterations = -1;
  invert->add_option("--in,-i", mel_in, "input mel")->required();
  invert->add_option("--out,-o", wav_out, "output wav")->required();
  invert->add_option("--iterations", iterations, "Griffin-Lim iterations")
      ->check(CLI::NonNegativeNumber);

  auto *eval = app.add_subcommand("eval", "mel L1 or boundary accuracy");
  add_common(eval, false);
  std::vector<std::string> mel_pair, label_pair;
  double tolerance = 20.0;
  eval->add_option("--mel", mel_pair, "two mel files")->expected(2);
  eval->add_option("--labels", label_pair, "reference and hypothesis labels")
      ->expected(2);
  eval->add_option("--tolerance", tolerance, "boundary tolerance in ms")
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : MELHTS_ERR_CONFIG;
  }

  if (eval->parsed()) {
    if (mel_pair.empty() == label_pair.empty()) {
      std::fprintf(stderr, "melhts: error: eval needs exactly one of --mel or --labels\n");
      return MELHTS_ERR_CONFIG;
    }
    double value = 0.0;
    if (!mel_pair.empty()) {
      const int rc = Report(melhts_eval_mel(mel_pair[0].c_str(), mel_pair[1].c_str(), &value));
      if (rc) return rc;
      std::printf("mel_l1=%.10g\n", value);
    } else {
      const int rc = Report(melhts_eval_labels(label_pair[0].c_str(),
                                               label_pair[1].c_str(), tolerance, &value));
      if (rc) return rc;
      std::printf("boundary_accuracy_percent=%.10g tolerance_ms=%g\n", value, tolerance);
    }
    return 0;
  }

  if (threads > 0) overrides.push_back("run.workers=" + std::to_string(threads));
  const auto ov = CStrings(overrides);
  melhts_config *raw = nullptr;
  if (int rc = Report(melhts_config_load(config_path.c_str(), ov.data(), ov.size(), &raw)))
    return rc;
  ConfigPtr config(raw);
  if (!quiet) melhts_config_set_log(config.get(), PrintLine, nullptr);
  if (dump_config) std::fputs(melhts_config_dump(config.get()), stdout);

  melhts_status status = MELHTS_OK;
  if (extract->parsed()) {
    status = melhts_extract(config.get());
  } else if (segment->parsed()) {
    status = melhts_segment(config.get());
  } else if (train->parsed()) {
    status = melhts_train(config.get());
  } else if (align->parsed()) {
    status = melhts_align(config.get());
  } else if (synth->parsed()) {
    double seconds = 0.0;
    status = melhts_synth_command(config.get(), text.c_str(), mel_out.c_str(),
                                  wav_out.empty() ? nullptr : wav_out.c_str(),
                                  &seconds);
    // Always printed: the timing line is part of the output contract.
    if (status == MELHTS_OK && quiet) std::printf("synth_seconds=%.6f\n", seconds);
  } else if (heq_fit->parsed()) {
    const auto s = CStrings(sources), t = CStrings(targets);
    status = melhts_heq_fit(config.get(), s.data(), s.size(), t.data(), t.size(),
                            lut_out.empty() ? nullptr : lut_out.c_str());
  } else if (heq_apply->parsed()) {
    status = melhts_heq_apply(config.get(), lut_in.c_str(), mel_in.c_str(),
                              mel_out.c_str());
  } else if (invert->parsed()) {
    status = melhts_invert(config.get(), mel_in.c_str(), wav_out.c_str(), iterations);
  }
  return Report(status);
}
