// src/pipeline/manifest.cpp

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

#include "pipeline/manifest.hpp"

#include <set>
#include <sstream>

#include "common/error.hpp"
#include "common/fileio.hpp"
#include "text/syllable.hpp"

namespace melhts::pipeline {

namespace fs = std::filesystem;

CorpusManifest LoadManifest(const fs::path &path, const text::Lexicon *lexicon) {
  const std::string body = ReadFileText(path);
  const fs::path base = fs::absolute(path).parent_path();
  CorpusManifest manifest;
  std::set<std::string> seen;
  std::istringstream in(body);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto where = path.string() + ":" + std::to_string(line_no);
    const auto tab1 = line.find('\t');
    if (tab1 == std::string::npos)
      Fail(ErrorKind::kParameter, where + ": expected id<TAB>wav<TAB>transcript");
    const auto tab2 = line.find('\t', tab1 + 1);
    ManifestEntry e;
    e.id = line.substr(0, tab1);
    e.wav = line.substr(tab1 + 1, tab2 == std::string::npos ? std::string::npos
                                                           : tab2 - tab1 - 1);
    if (tab2 != std::string::npos) e.transcript = line.substr(tab2 + 1);
    if (e.id.empty() || e.wav.empty())
      Fail(ErrorKind::kParameter, where + ": empty id or wav path");
    if (!seen.insert(e.id).second)
      Fail(ErrorKind::kParameter, where + ": duplicate utterance id " + e.id);
    if (e.wav.is_relative()) e.wav = base / e.wav;
    if (!fs::is_regular_file(e.wav))
      Fail(ErrorKind::kIo, "utterance " + e.id + ": cannot read wav " + e.wav.string());
    if (lexicon) {
      try {
        text::ParseText(e.transcript, *lexicon);
      } catch (const Error &err) {
        Fail(err.kind(), "utterance " + e.id + ": " + err.what());
      }
    }
    manifest.entries.push_back(std::move(e));
  }
  Require(!manifest.entries.empty(), ErrorKind::kData,
          path.string() + ": manifest lists no utterances");
  return manifest;
}

}  // namespace melhts::pipeline
