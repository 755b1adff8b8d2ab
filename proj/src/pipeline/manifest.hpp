// src/pipeline/manifest.hpp

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

#include <filesystem>
#include <string>
#include <vector>

#include "text/phones.hpp"

namespace melhts::pipeline {

struct ManifestEntry {
  std::string id;
  std::filesystem::path wav;
  std::string transcript;
};

/// `id<TAB>wav path<TAB>transcript` per line; blank lines and lines starting
/// with '#' are skipped. Relative wav paths resolve against the manifest.
struct CorpusManifest {
  std::vector<ManifestEntry> entries;
  std::size_t size() const { return entries.size(); }
};

// Throws kParameter for malformed lines or duplicate ids, kIo naming the
// utterance when a wav is missing, and kData naming the word when
// |lexicon| is given and does not cover a transcript.
CorpusManifest LoadManifest(const std::filesystem::path &path,
                            const text::Lexicon *lexicon = nullptr);

}  // namespace melhts::pipeline
