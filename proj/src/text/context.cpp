// src/text/context.cpp

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

#include "text/context.hpp"

#include "common/error.hpp"

namespace melhts::text {

std::string_view PositionName(SyllablePosition p) {
  switch (p) {
    case SyllablePosition::kOnset: return "onset";
    case SyllablePosition::kNucleus: return "nucleus";
    case SyllablePosition::kCoda: return "coda";
  }
  return "?";
}

std::string ContextLabel::ToString() const {
  std::string s = ll + "^" + l + "-" + c + "+" + r + "=" + rr + "@" +
                  std::string(PositionName(position)) +
                  "/S:" + std::to_string(syllable_index) + "/W:";
  s += word_boundary_left ? '1' : '0';
  s += word_boundary_right ? '1' : '0';
  return s;
}

std::vector<ContextLabel> MakeContextLabels(
    const PhoneSequence &phones, const std::vector<Syllable> &syllables,
    const PhoneSet &phone_set) {
  const std::size_t n = phones.size();
  Require(phones.word_index.size() == n, ErrorKind::kInternal,
          "phone sequence is missing word indices");
  std::vector<int> syl_of(n, -1);
  std::vector<SyllablePosition> pos(n, SyllablePosition::kOnset);
  std::size_t cursor = 0;
  for (std::size_t s = 0; s < syllables.size(); ++s) {
    const auto &syl = syllables[s];
    Require(syl.first_phone == cursor, ErrorKind::kInternal,
            "syllables do not partition the phone sequence");
    bool seen_vowel = false;
    for (std::size_t j = 0; j < syl.phones.size(); ++j, ++cursor) {
      Require(cursor < n && phones.ids[cursor] == syl.phones[j],
              ErrorKind::kInternal,
              "syllables do not partition the phone sequence");
      syl_of[cursor] = static_cast<int>(s);
      const bool vowel =
          phone_set.ClassOf(syl.phones[j]) == PhoneClass::kVowel;
      if (vowel) {
        pos[cursor] = SyllablePosition::kNucleus;
        seen_vowel = true;
      } else {
        pos[cursor] =
            seen_vowel ? SyllablePosition::kCoda : SyllablePosition::kOnset;
      }
    }
  }
  Require(cursor == n, ErrorKind::kInternal,
          "syllables do not cover the phone sequence");

  auto at = [&](long i) -> std::string {
    return i < 0 || i >= static_cast<long>(n) ? std::string(kPadPhone)
                                              : phones.ids[i];
  };
  std::vector<ContextLabel> labels(n);
  for (long i = 0; i < static_cast<long>(n); ++i) {
    auto &lab = labels[i];
    lab.ll = at(i - 2);
    lab.l = at(i - 1);
    lab.c = phones.ids[i];
    lab.r = at(i + 1);
    lab.rr = at(i + 2);
    lab.position = pos[i];
    lab.syllable_index = syl_of[i];
    const int w = phones.word_index[i];
    lab.word_boundary_left = i == 0 || phones.word_index[i - 1] != w;
    lab.word_boundary_right =
        i + 1 == static_cast<long>(n) || phones.word_index[i + 1] != w;
  }
  return labels;
}

}  // namespace melhts::text
