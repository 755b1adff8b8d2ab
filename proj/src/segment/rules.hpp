// src/segment/rules.hpp

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

#include "text/phones.hpp"

namespace melhts::seg {

enum class CorrectionMethod { kSte, kSbsf, kKeep };

std::string_view MethodName(CorrectionMethod m);

// Syllable-boundary correction rule on (last phone of the left syllable,
// first phone of the right syllable):
//  - SBSF when exactly one side is a fricative or affricate;
//  - otherwise STE when the left phone is neither fricative nor nasal and
//    the right phone is none of fricative, affricate, nasal, semivowel;
//  - otherwise KEEP (leave the HMM boundary).
CorrectionMethod RuleForPair(text::PhoneClass left, text::PhoneClass right);

}  // namespace melhts::seg
