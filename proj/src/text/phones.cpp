// src/text/phones.cpp

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

#include "text/phones.hpp"

#include <sstream>

#include "common/error.hpp"
#include "common/fileio.hpp"

namespace melhts::text {

namespace {

constexpr std::string_view kClassNames[kNumPhoneClasses] = {
    "vowel", "fricative", "affricate", "nasal",
    "semivowel", "stop", "silence", "other"};

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string> SplitWhitespace(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

template <typename Fn>
void ForEachLine(std::string_view text, Fn fn) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = Trim(line);
    if (!line.empty()) fn(line, line_no);
  }
}

}  // namespace

std::string_view ClassName(PhoneClass c) {
  return kClassNames[static_cast<int>(c)];
}

std::optional<PhoneClass> ParseClass(std::string_view name) {
  for (int i = 0; i < kNumPhoneClasses; ++i)
    if (kClassNames[i] == name) return static_cast<PhoneClass>(i);
  return std::nullopt;
}

PhoneClass ClassFromIndex(int i) { return static_cast<PhoneClass>(i); }

PhoneSet::PhoneSet() { classes_[kSilencePhone] = PhoneClass::kSilence; }

void PhoneSet::Add(const std::string &id, PhoneClass cls) {
  Require(!id.empty(), ErrorKind::kData, "empty phone id");
  Require(id != kPadPhone, ErrorKind::kData,
          "phone id 'x' is reserved for context padding");
  classes_[id] = cls;
}

bool PhoneSet::Contains(const std::string &id) const {
  return classes_.count(id) != 0;
}

PhoneClass PhoneSet::ClassOf(const std::string &id) const {
  if (id == kPadPhone) return PhoneClass::kSilence;
  auto it = classes_.find(id);
  if (it == classes_.end()) Fail(ErrorKind::kData, "unknown phone '" + id + "'");
  return it->second;
}

std::optional<PhoneClass> PhoneSet::FindClass(const std::string &id) const {
  if (id == kPadPhone) return PhoneClass::kSilence;
  auto it = classes_.find(id);
  if (it == classes_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> PhoneSet::Ids() const {
  std::vector<std::string> ids;
  for (const auto &[id, cls] : classes_) ids.push_back(id);
  return ids;
}

PhoneSet ParsePhoneSet(std::string_view text) {
  PhoneSet set;
  ForEachLine(text, [&](std::string_view line, std::size_t line_no) {
    auto fields = SplitWhitespace(line);
    if (fields.size() != 2)
      Fail(ErrorKind::kFormat, "phone-class line " + std::to_string(line_no) +
                                   ": expected 'phone<TAB>class'");
    auto cls = ParseClass(fields[1]);
    if (!cls)
      Fail(ErrorKind::kFormat, "phone-class line " + std::to_string(line_no) +
                                   ": unknown class '" + fields[1] + "'");
    set.Add(fields[0], *cls);
  });
  return set;
}

PhoneSet LoadPhoneSet(const std::filesystem::path &path) {
  return ParsePhoneSet(ReadFileText(path));
}

void Lexicon::Add(const std::string &word,
                  std::vector<std::string> pronunciation) {
  Require(!word.empty(), ErrorKind::kData, "empty lexicon word");
  Require(!pronunciation.empty(), ErrorKind::kData,
          "empty pronunciation for '" + word + "'");
  for (const auto &p : pronunciation)
    Require(phones_.Contains(p), ErrorKind::kData,
            "lexicon entry '" + word + "' uses unknown phone '" + p + "'");
  entries_[word] = std::move(pronunciation);
}

const std::vector<std::string> *Lexicon::Find(const std::string &word) const {
  auto it = entries_.find(word);
  return it == entries_.end() ? nullptr : &it->second;
}

Lexicon ParseLexicon(std::string_view text, PhoneSet phones) {
  Lexicon lex(std::move(phones));
  ForEachLine(text, [&](std::string_view line, std::size_t line_no) {
    auto fields = SplitWhitespace(line);
    if (fields.size() < 2)
      Fail(ErrorKind::kFormat, "lexicon line " + std::to_string(line_no) +
                                   ": expected 'word<TAB>phone ...'");
    std::string word = fields[0];
    fields.erase(fields.begin());
    lex.Add(word, std::move(fields));
  });
  return lex;
}

Lexicon LoadLexicon(const std::filesystem::path &lexicon_path,
                    const std::filesystem::path &phone_class_path) {
  return ParseLexicon(ReadFileText(lexicon_path),
                      LoadPhoneSet(phone_class_path));
}

}  // namespace melhts::text
