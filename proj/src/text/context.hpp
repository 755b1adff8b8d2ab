// src/text/context.hpp

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

#include "text/syllable.hpp"

namespace melhts::text {

enum class SyllablePosition { kOnset, kNucleus, kCoda };

std::string_view PositionName(SyllablePosition p);

/// Pentaphone context (two phones either side, "x" beyond the utterance)
/// plus the phone's place in its syllable and word.
struct ContextLabel {
  std::string ll = kPadPhone;
  std::string l = kPadPhone;
  std::string c;
  std::string r = kPadPhone;
  std::string rr = kPadPhone;
  SyllablePosition position = SyllablePosition::kOnset;
  int syllable_index = 0;
  bool word_boundary_left = false;
  bool word_boundary_right = false;

  // e.g. "x^sil-k+a=r@onset/S:1/W:10"
  std::string ToString() const;

  friend bool operator==(const ContextLabel &, const ContextLabel &) = default;
};

// Throws kInternal when |syllables| does not partition |phones| in order.
std::vector<ContextLabel> MakeContextLabels(
    const PhoneSequence &phones, const std::vector<Syllable> &syllables,
    const PhoneSet &phone_set);

}  // namespace melhts::text
