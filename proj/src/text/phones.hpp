// src/text/phones.hpp

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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace melhts::text {

enum class PhoneClass {
  kVowel,
  kFricative,
  kAffricate,
  kNasal,
  kSemivowel,
  kStop,
  kSilence,
  kOther,
};

inline constexpr int kNumPhoneClasses = 8;
inline constexpr const char *kSilencePhone = "sil";
inline constexpr const char *kPadPhone = "x";

std::string_view ClassName(PhoneClass c);
std::optional<PhoneClass> ParseClass(std::string_view name);
PhoneClass ClassFromIndex(int i);

/// Phone inventory: id -> class.
class PhoneSet {
 public:
  // Always contains the silence phone.
  PhoneSet();

  void Add(const std::string &id, PhoneClass cls);
  bool Contains(const std::string &id) const;
  // Throws kData for an unknown phone. The pad symbol maps to silence.
  PhoneClass ClassOf(const std::string &id) const;
  std::optional<PhoneClass> FindClass(const std::string &id) const;
  std::vector<std::string> Ids() const;
  std::size_t size() const { return classes_.size(); }

 private:
  std::map<std::string, PhoneClass> classes_;
};

// `phone<TAB>class` per line; '#' starts a comment.
PhoneSet LoadPhoneSet(const std::filesystem::path &path);
PhoneSet ParsePhoneSet(std::string_view text);

class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(PhoneSet phones) : phones_(std::move(phones)) {}

  // Throws kData when the pronunciation uses a phone outside the set.
  void Add(const std::string &word, std::vector<std::string> pronunciation);
  const std::vector<std::string> *Find(const std::string &word) const;
  const PhoneSet &phones() const { return phones_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  PhoneSet phones_;
  std::map<std::string, std::vector<std::string>> entries_;
};

// `word<TAB>phone phone ...` per line.
Lexicon LoadLexicon(const std::filesystem::path &lexicon_path,
                    const std::filesystem::path &phone_class_path);
Lexicon ParseLexicon(std::string_view text, PhoneSet phones);

}  // namespace melhts::text
