// src/segment/boundary.hpp

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
#include <string_view>
#include <vector>

namespace melhts::seg {

enum class BoundarySource { kHmm, kGd, kSbsf, kSte };

std::string_view SourceName(BoundarySource source);

struct Boundary {
  double time_ms = 0.0;
  BoundarySource source = BoundarySource::kHmm;
  std::string left_unit;
  std::string right_unit;
};

/// Ordered boundaries over one utterance.
struct BoundarySet {
  std::vector<Boundary> boundaries;
  double utterance_duration_ms = 0.0;

  std::size_t size() const { return boundaries.size(); }
  bool empty() const { return boundaries.empty(); }
};

// True when times strictly ascend, lie within the utterance, and no two are
// closer than |min_gap_ms|.
bool IsWellFormed(const BoundarySet &set, double min_gap_ms);

}  // namespace melhts::seg
