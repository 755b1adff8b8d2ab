// src/text/syllable.hpp

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

#include <string>
#include <vector>

#include "text/phones.hpp"

namespace melhts::text {

/// Phones of an utterance plus the word each phone came from (-1 for
/// silence).
struct PhoneSequence {
  std::vector<std::string> ids;
  std::vector<int> word_index;

  std::size_t size() const { return ids.size(); }
};

// Whitespace-tokenized lexicon lookup with silence at both ends. An empty
// utterance is a single silence. Unknown words throw kData naming the word.
PhoneSequence ParseText(const std::string &text, const Lexicon &lexicon);

// Unannotated sequence; every phone is its own word except silence.
PhoneSequence MakePhoneSequence(std::vector<std::string> ids);

struct Syllable {
  std::vector<std::string> phones;
  bool has_nucleus = false;
  std::size_t first_phone = 0;  // index into the utterance

  std::string Name() const;
};

enum class SplitPolicy {
  kSingleOnset,   // VCCV -> VC.CV
  kMaximalOnset,  // VCCV -> V.CCV
};

// Each vowel anchors one syllable (C*VC*); silence phones stand alone as
// nucleus-free syllables. Concatenating the result reproduces |phones|.
std::vector<Syllable> Syllabify(const PhoneSequence &phones,
                                const PhoneSet &phone_set,
                                SplitPolicy policy = SplitPolicy::kSingleOnset);

}  // namespace melhts::text
