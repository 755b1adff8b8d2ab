// src/segment/rules.cpp

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

#include "segment/rules.hpp"

namespace melhts::seg {

using text::PhoneClass;

std::string_view MethodName(CorrectionMethod m) {
  switch (m) {
    case CorrectionMethod::kSte: return "STE";
    case CorrectionMethod::kSbsf: return "SBSF";
    case CorrectionMethod::kKeep: return "KEEP";
  }
  return "?";
}

CorrectionMethod RuleForPair(PhoneClass left, PhoneClass right) {
  auto frication = [](PhoneClass c) {
    return c == PhoneClass::kFricative || c == PhoneClass::kAffricate;
  };
  // Frication on exactly one side wins: an affricate-final syllable before a
  // stop (khoj|kar) is an SBSF boundary even though it passes the STE test.
  if (frication(left) != frication(right)) return CorrectionMethod::kSbsf;

  const bool ste_left = left != PhoneClass::kFricative && left != PhoneClass::kNasal;
  const bool ste_right =
      right != PhoneClass::kFricative && right != PhoneClass::kAffricate &&
      right != PhoneClass::kNasal && right != PhoneClass::kSemivowel;
  if (ste_left && ste_right) return CorrectionMethod::kSte;
  return CorrectionMethod::kKeep;
}

}  // namespace melhts::seg
