// src/segment/boundary.cpp

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

#include "segment/boundary.hpp"

namespace melhts::seg {

std::string_view SourceName(BoundarySource source) {
  switch (source) {
    case BoundarySource::kHmm: return "HMM";
    case BoundarySource::kGd: return "GD";
    case BoundarySource::kSbsf: return "SBSF";
    case BoundarySource::kSte: return "STE";
  }
  return "?";
}

bool IsWellFormed(const BoundarySet &set, double min_gap_ms) {
  for (std::size_t i = 0; i < set.boundaries.size(); ++i) {
    const double t = set.boundaries[i].time_ms;
    if (t < 0.0 || t > set.utterance_duration_ms) return false;
    if (i > 0 && t - set.boundaries[i - 1].time_ms < min_gap_ms) return false;
    if (i > 0 && t <= set.boundaries[i - 1].time_ms) return false;
  }
  return true;
}

}  // namespace melhts::seg
