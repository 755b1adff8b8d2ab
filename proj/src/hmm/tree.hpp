// src/hmm/tree.hpp

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

#include <cstdint>
#include <string>
#include <vector>

#include "hmm/gaussian.hpp"
#include "text/context.hpp"
#include "text/phones.hpp"

namespace melhts::hmm {

enum class ContextSlot : std::uint8_t { kLeftLeft, kLeft, kRight, kRightRight };

/// Yes/no question about a pentaphone context: identity or class of a
/// neighbouring phone, or the phone's position in its syllable.
struct Question {
  enum class Kind : std::uint8_t { kPhone, kClass, kPosition };
  Kind kind = Kind::kPhone;
  ContextSlot slot = ContextSlot::kLeft;
  std::string phone;
  text::PhoneClass phone_class = text::PhoneClass::kVowel;
  text::SyllablePosition position = text::SyllablePosition::kOnset;

  // e.g. "L==k", "RR=nasal", "pos==coda"
  std::string Name() const;
  // Phones outside |phones| answer no to every identity and class question.
  bool Ask(const text::ContextLabel &label, const text::PhoneSet &phones) const;
  friend bool operator==(const Question &, const Question &) = default;
};

const std::string &SlotValue(const text::ContextLabel &label, ContextSlot slot);

// Identity and class questions for each of the four neighbour slots, then
// one question per syllable position.
std::vector<Question> BuildQuestions(const text::PhoneSet &phones);

struct TreeNode {
  int question = -1;  // -1 marks a leaf
  int yes = -1;
  int no = -1;
  int leaf = -1;
  friend bool operator==(const TreeNode &, const TreeNode &) = default;
};

/// Binary tree for one (phone, state) pair; node 0 is the root.
struct DecisionTree {
  std::string phone;
  int state = 0;
  std::vector<TreeNode> nodes;

  int Route(const text::ContextLabel &label,
            const std::vector<Question> &questions,
            const text::PhoneSet &phones) const;
  std::size_t NumLeaves() const;
  friend bool operator==(const DecisionTree &, const DecisionTree &) = default;
};

struct ContextStats {
  text::ContextLabel label;
  GaussianStats stats;
};

struct ClusterOptions {
  double min_occupancy = 50.0;
  double min_gain = 0.0;
  // Adds mdl_factor * dim * log(root occupancy) to the split threshold.
  double mdl_factor = 1.0;
};

struct ClusterResult {
  DecisionTree tree;
  std::vector<GaussianStats> leaves;  // indexed by TreeNode::leaf
  std::vector<double> split_gains;    // one per internal node, in order
};

/// Greedy top-down clustering of the contexts seen for one (phone, state).
/// A node splits on the question with the largest log-likelihood gain when
/// the gain exceeds the threshold and both children keep min_occupancy.
ClusterResult ClusterStates(const std::string &phone, int state,
                            const std::vector<ContextStats> &contexts,
                            const std::vector<Question> &questions,
                            const text::PhoneSet &phones,
                            std::span<const double> var_floor,
                            const ClusterOptions &options);

}  // namespace melhts::hmm
