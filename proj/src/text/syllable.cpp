// src/text/syllable.cpp

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

#include "text/syllable.hpp"

#include <sstream>

#include "common/error.hpp"

namespace melhts::text {

PhoneSequence ParseText(const std::string &text, const Lexicon &lexicon) {
  Require(!lexicon.empty(), ErrorKind::kData, "lexicon is empty");
  PhoneSequence out;
  out.ids.push_back(kSilencePhone);
  out.word_index.push_back(-1);
  std::istringstream in(text);
  std::string word;
  std::vector<std::string> missing;
  int w = 0;
  while (in >> word) {
    const auto *pron = lexicon.Find(word);
    if (!pron) {
      missing.push_back(word);
      continue;
    }
    for (const auto &p : *pron) {
      out.ids.push_back(p);
      out.word_index.push_back(w);
    }
    ++w;
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto &m : missing) list += (list.empty() ? "" : ", ") + m;
    Fail(ErrorKind::kData, "out-of-lexicon word(s): " + list);
  }
  if (w > 0) {
    out.ids.push_back(kSilencePhone);
    out.word_index.push_back(-1);
  }
  return out;
}

PhoneSequence MakePhoneSequence(std::vector<std::string> ids) {
  PhoneSequence out;
  out.word_index.reserve(ids.size());
  int w = 0;
  for (const auto &id : ids) out.word_index.push_back(id == kSilencePhone ? -1 : w++);
  out.ids = std::move(ids);
  return out;
}

std::string Syllable::Name() const {
  std::string s;
  for (const auto &p : phones) s += p;
  return s;
}

namespace {

void SyllabifySpan(const PhoneSequence &phones, const PhoneSet &set,
                   std::size_t begin, std::size_t end, SplitPolicy policy,
                   std::vector<Syllable> &out) {
  std::vector<std::size_t> vowels;
  for (std::size_t i = begin; i < end; ++i)
    if (set.ClassOf(phones.ids[i]) == PhoneClass::kVowel) vowels.push_back(i);

  std::vector<std::size_t> starts{begin};
  for (std::size_t k = 0; k + 1 < vowels.size(); ++k) {
    const std::size_t cluster = vowels[k + 1] - vowels[k] - 1;
    starts.push_back(policy == SplitPolicy::kSingleOnset
                         ? vowels[k + 1] - (cluster > 0 ? 1 : 0)
                         : vowels[k] + 1);
  }
  starts.push_back(end);
  for (std::size_t s = 0; s + 1 < starts.size(); ++s) {
    Syllable syl;
    syl.first_phone = starts[s];
    syl.phones.assign(phones.ids.begin() + static_cast<long>(starts[s]),
                      phones.ids.begin() + static_cast<long>(starts[s + 1]));
    syl.has_nucleus = !vowels.empty();
    out.push_back(std::move(syl));
  }
}

}  // namespace

std::vector<Syllable> Syllabify(const PhoneSequence &phones,
                                const PhoneSet &phone_set,
                                SplitPolicy policy) {
  std::vector<Syllable> out;
  std::size_t span_begin = 0;
  for (std::size_t i = 0; i <= phones.size(); ++i) {
    const bool at_silence =
        i < phones.size() &&
        phone_set.ClassOf(phones.ids[i]) == PhoneClass::kSilence;
    if (i == phones.size() || at_silence) {
      if (i > span_begin)
        SyllabifySpan(phones, phone_set, span_begin, i, policy, out);
      if (at_silence) {
        Syllable sil;
        sil.phones = {phones.ids[i]};
        sil.first_phone = i;
        out.push_back(std::move(sil));
      }
      span_begin = i + 1;
    }
  }
  return out;
}

}  // namespace melhts::text
