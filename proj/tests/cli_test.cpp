// tests/cli_test.cpp

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

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "common/fileio.hpp"
#include "doctest.h"
#include "support/synth.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result Melhts(const std::string &args, const std::string &env = "") {
  const std::string cmd = env + " \"" MELHTS_CLI_PATH "\" " + args + " 2>&1";
  Result r;
  FILE *p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf;
  while (std::fgets(buf.data(), buf.size(), p)) r.out += buf.data();
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string Q(const fs::path &p) { return "\"" + p.string() + "\""; }

fs::path Dir() {
  static const fs::path d = [] {
    auto p = fs::temp_directory_path() / "melhts_cli_test";
    fs::remove_all(p);
    return p;
  }();
  return d;
}

const fs::path &Corpus() {
  static const fs::path cfg = [] {
    auto c = melhts::testing::WriteToyCorpus(Dir() / "toy", {.utterances = 10});
    REQUIRE(Melhts("extract -q -c " + Q(c)).code == 0);
    REQUIRE(Melhts("train -q -c " + Q(c)).code == 0);
    return c;
  }();
  return cfg;
}

}  // namespace

TEST_CASE("usage errors exit with the config code") {
  CHECK(Melhts("").code == 1);
  CHECK(Melhts("frobnicate").code == 1);
  CHECK(Melhts("extract").code == 1);
  CHECK(Melhts("extract -c /nonexistent/melhts.conf").code == 1);
  CHECK(Melhts("extract -c " + Q(Corpus()) + " --set mel.num_filters=-3").code == 1);
  CHECK(Melhts("eval --mel a.mel").code == 1);
  CHECK(Melhts("--help").code == 0);
  CHECK(Melhts("--version").out.find("0.3.0") != std::string::npos);
}

TEST_CASE("exit codes for i/o and data errors") {
  auto cfg = melhts::testing::WriteToyCorpus(Dir() / "broken", {.utterances = 2});
  fs::remove(Dir() / "broken" / "wav" / "utt0000.wav");
  auto r = Melhts("extract -c " + Q(cfg));
  CHECK(r.code == 2);
  CHECK(r.out.find("utt0000") != std::string::npos);

  r = Melhts("synth -c " + Q(Corpus()) + " -t \"kar florb\" -o " + Q(Dir() / "x.mel"));
  CHECK(r.code == 3);
  CHECK(r.out.find("florb") != std::string::npos);
  CHECK(Melhts("eval --mel " + Q(Dir() / "none1.mel") + " " + Q(Dir() / "none2.mel")).code == 2);
}

TEST_CASE("synth prints a parsable timing line and is repeatable") {
  const auto a = Dir() / "a.mel", b = Dir() / "b.mel";
  auto r = Melhts("synth -c " + Q(Corpus()) + " -t \"kar taa khoj pin sum mate kite pat\" -o " + Q(a));
  REQUIRE(r.code == 0);
  const auto pos = r.out.find("synth_seconds=");
  REQUIRE(pos != std::string::npos);
  CHECK(std::strtod(r.out.c_str() + pos + 14, nullptr) >= 0.0);
  r = Melhts("synth -q -c " + Q(Corpus()) + " -t \"kar taa khoj pin sum mate kite pat\" -o " + Q(b));
  REQUIRE(r.code == 0);
  CHECK(r.out.find("synth_seconds=") != std::string::npos);
  CHECK(melhts::ReadFileBytes(a) == melhts::ReadFileBytes(b));

  r = Melhts("eval --mel " + Q(a) + " " + Q(b));
  CHECK(r.code == 0);
  CHECK(r.out.find("mel_l1=0") != std::string::npos);
}

TEST_CASE("eval of identical labels and the worker cap") {
  const auto lab = Dir() / "toy" / "ref" / "utt0001.lab";
  auto r = Melhts("eval --labels " + Q(lab) + " " + Q(lab));
  CHECK(r.code == 0);
  CHECK(r.out.find("boundary_accuracy_percent=100") != std::string::npos);

  r = Melhts("train -c " + Q(Corpus()) + " -j 8 --dump-config", "MELHTS_THREADS=2");
  CHECK(r.code == 0);
  CHECK(r.out.find("workers = 8") != std::string::npos);  // configured
  CHECK(r.out.find(" workers=2") != std::string::npos);   // effective
}

TEST_CASE("full command chain through the tool") {
  const auto &cfg = Corpus();
  const auto mel = Dir() / "chain.mel", eq = Dir() / "chain_eq.mel", wav = Dir() / "chain.wav";
  CHECK(Melhts("segment -q -c " + Q(cfg)).code == 0);
  CHECK(Melhts("align -q -c " + Q(cfg)).code == 0);
  CHECK(Melhts("synth -q -c " + Q(cfg) + " -t \"sum rama\" -o " + Q(mel)).code == 0);
  CHECK(Melhts("heq-fit -q -c " + Q(cfg)).code == 0);
  CHECK(Melhts("heq-apply -q -c " + Q(cfg) + " --lut " + Q(cfg.parent_path() / "work" / "heq.lut") +
               " -i " + Q(mel) + " -o " + Q(eq)).code == 0);
  auto r = Melhts("invert -c " + Q(cfg) + " -i " + Q(eq) + " -o " + Q(wav) + " --iterations 4");
  CHECK(r.code == 0);
  CHECK(r.out.find("spectral_convergence=") != std::string::npos);
  CHECK(fs::file_size(wav) > 44);
}
