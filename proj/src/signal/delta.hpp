// src/signal/delta.hpp

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

#include <cstddef>
#include <utility>
#include <vector>

#include "common/matrix.hpp"

namespace melhts::signal {

// Stacks [static | delta | delta-delta]. Deltas use the linear-regression
// window over +-half_window frames with edge frames replicated; the
// delta-delta is the same regression applied to the deltas.
Matrix DeltaFeatures(const Matrix &features, int half_window);

/// One output row of a linear operator over a length-T trajectory, stored as
/// (frame index, coefficient) pairs.
using SparseRow = std::vector<std::pair<std::size_t, double>>;

struct DeltaOperator {
  std::vector<SparseRow> delta;   // T rows
  std::vector<SparseRow> delta2;  // T rows
};

// The linear maps DeltaFeatures applies to each feature dimension, for a
// trajectory of |num_frames| frames.
DeltaOperator BuildDeltaOperator(std::size_t num_frames, int half_window);

}  // namespace melhts::signal
