// src/hmm/tree.cpp

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

#include "hmm/tree.hpp"

#include <cmath>
#include <map>
#include <tuple>

#include "common/error.hpp"

namespace melhts::hmm {

namespace {

constexpr ContextSlot kSlots[] = {ContextSlot::kLeftLeft, ContextSlot::kLeft,
                                  ContextSlot::kRight, ContextSlot::kRightRight};

std::string_view SlotName(ContextSlot s) {
  switch (s) {
    case ContextSlot::kLeftLeft: return "LL";
    case ContextSlot::kLeft: return "L";
    case ContextSlot::kRight: return "R";
    case ContextSlot::kRightRight: return "RR";
  }
  return "?";
}

GaussianStats Subtract(const GaussianStats &a, const GaussianStats &b) {
  GaussianStats r = a;
  if (b.sum.empty()) return r;
  r.occupancy -= b.occupancy;
  for (std::size_t d = 0; d < r.sum.size(); ++d) {
    r.sum[d] -= b.sum[d];
    r.sum_sq[d] -= b.sum_sq[d];
  }
  return r;
}

}  // namespace

const std::string &SlotValue(const text::ContextLabel &label, ContextSlot slot) {
  switch (slot) {
    case ContextSlot::kLeftLeft: return label.ll;
    case ContextSlot::kLeft: return label.l;
    case ContextSlot::kRight: return label.r;
    case ContextSlot::kRightRight: return label.rr;
  }
  return label.c;
}

std::string Question::Name() const {
  switch (kind) {
    case Kind::kPhone:
      return std::string(SlotName(slot)) + "==" + phone;
    case Kind::kClass:
      return std::string(SlotName(slot)) + "=" +
             std::string(text::ClassName(phone_class));
    case Kind::kPosition:
      return "pos==" + std::string(text::PositionName(position));
  }
  return "?";
}

bool Question::Ask(const text::ContextLabel &label,
                   const text::PhoneSet &phones) const {
  switch (kind) {
    case Kind::kPhone:
      return SlotValue(label, slot) == phone;
    case Kind::kClass: {
      auto cls = phones.FindClass(SlotValue(label, slot));
      return cls && *cls == phone_class;
    }
    case Kind::kPosition:
      return label.position == position;
  }
  return false;
}

std::vector<Question> BuildQuestions(const text::PhoneSet &phones) {
  std::vector<Question> qs;
  const auto ids = phones.Ids();
  for (auto slot : kSlots) {
    for (const auto &id : ids) {
      Question q;
      q.kind = Question::Kind::kPhone;
      q.slot = slot;
      q.phone = id;
      qs.push_back(q);
    }
    for (int c = 0; c < text::kNumPhoneClasses; ++c) {
      Question q;
      q.kind = Question::Kind::kClass;
      q.slot = slot;
      q.phone_class = text::ClassFromIndex(c);
      qs.push_back(q);
    }
  }
  for (auto pos : {text::SyllablePosition::kOnset,
                   text::SyllablePosition::kNucleus,
                   text::SyllablePosition::kCoda}) {
    Question q;
    q.kind = Question::Kind::kPosition;
    q.position = pos;
    qs.push_back(q);
  }
  return qs;
}

int DecisionTree::Route(const text::ContextLabel &label,
                        const std::vector<Question> &questions,
                        const text::PhoneSet &phones) const {
  Require(!nodes.empty(), ErrorKind::kInternal,
          "empty decision tree for " + phone);
  std::size_t n = 0;
  for (std::size_t steps = 0; steps <= nodes.size(); ++steps) {
    const auto &node = nodes[n];
    if (node.question < 0) return node.leaf;
    n = static_cast<std::size_t>(
        questions.at(static_cast<std::size_t>(node.question)).Ask(label, phones)
            ? node.yes
            : node.no);
    Require(n < nodes.size(), ErrorKind::kInternal,
            "decision tree for " + phone + " has a dangling branch");
  }
  Fail(ErrorKind::kInternal, "decision tree for " + phone + " has a cycle");
}

std::size_t DecisionTree::NumLeaves() const {
  std::size_t n = 0;
  for (const auto &node : nodes) n += node.question < 0;
  return n;
}

ClusterResult ClusterStates(const std::string &phone, int state,
                            const std::vector<ContextStats> &contexts,
                            const std::vector<Question> &questions,
                            const text::PhoneSet &phones,
                            std::span<const double> var_floor,
                            const ClusterOptions &options) {
  Require(!contexts.empty(), ErrorKind::kData,
          "no statistics to cluster for " + phone + " state " +
              std::to_string(state));

  // Only the fields the questions look at distinguish contexts.
  using Key = std::tuple<std::string, std::string, std::string, std::string,
                         text::SyllablePosition>;
  std::map<Key, std::size_t> index;
  std::vector<ContextStats> items;
  for (const auto &c : contexts) {
    Key k{c.label.ll, c.label.l, c.label.r, c.label.rr, c.label.position};
    auto [it, inserted] = index.emplace(k, items.size());
    if (inserted) {
      items.push_back(c);
    } else {
      items[it->second].stats.Merge(c.stats);
    }
  }

  ClusterResult result;
  result.tree.phone = phone;
  result.tree.state = state;

  GaussianStats root;
  for (const auto &it : items) root.Merge(it.stats);
  const double dim = static_cast<double>(root.sum.size());
  const double threshold =
      options.min_gain +
      options.mdl_factor * dim * std::log(std::max(root.occupancy, 1.0));

  struct Pending {
    std::size_t node;
    std::vector<std::size_t> members;
  };
  result.tree.nodes.emplace_back();
  std::vector<Pending> stack;
  std::vector<std::size_t> all(items.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  stack.push_back({0, std::move(all)});

  while (!stack.empty()) {
    Pending p = std::move(stack.back());
    stack.pop_back();

    GaussianStats total;
    for (auto i : p.members) total.Merge(items[i].stats);
    const double base = total.LogLikelihood(var_floor);

    // Per-slot and per-position groupings make each question a lookup.
    std::map<std::string, GaussianStats> by_slot[4];
    std::map<text::SyllablePosition, GaussianStats> by_position;
    for (auto i : p.members) {
      for (int s = 0; s < 4; ++s)
        by_slot[s][SlotValue(items[i].label, kSlots[s])].Merge(items[i].stats);
      by_position[items[i].label.position].Merge(items[i].stats);
    }

    int best = -1;
    double best_gain = threshold;
    for (std::size_t q = 0; q < questions.size(); ++q) {
      const auto &question = questions[q];
      GaussianStats yes;
      switch (question.kind) {
        case Question::Kind::kPhone: {
          const auto &groups = by_slot[static_cast<int>(question.slot)];
          auto it = groups.find(question.phone);
          if (it != groups.end()) yes = it->second;
          break;
        }
        case Question::Kind::kClass:
          for (const auto &[id, st] : by_slot[static_cast<int>(question.slot)]) {
            auto cls = phones.FindClass(id);
            if (cls && *cls == question.phone_class) yes.Merge(st);
          }
          break;
        case Question::Kind::kPosition: {
          auto it = by_position.find(question.position);
          if (it != by_position.end()) yes = it->second;
          break;
        }
      }
      if (yes.occupancy < options.min_occupancy) continue;
      GaussianStats no = Subtract(total, yes);
      if (no.occupancy < options.min_occupancy) continue;
      const double gain =
          yes.LogLikelihood(var_floor) + no.LogLikelihood(var_floor) - base;
      if (gain > best_gain) {
        best_gain = gain;
        best = static_cast<int>(q);
      }
    }

    if (best < 0) {
      result.tree.nodes[p.node].leaf = static_cast<int>(result.leaves.size());
      result.leaves.push_back(std::move(total));
      continue;
    }

    std::vector<std::size_t> yes_members, no_members;
    for (auto i : p.members) {
      (questions[static_cast<std::size_t>(best)].Ask(items[i].label, phones)
           ? yes_members
           : no_members)
          .push_back(i);
    }
    const auto yes_node = result.tree.nodes.size();
    result.tree.nodes.emplace_back();
    const auto no_node = result.tree.nodes.size();
    result.tree.nodes.emplace_back();
    auto &node = result.tree.nodes[p.node];
    node.question = best;
    node.yes = static_cast<int>(yes_node);
    node.no = static_cast<int>(no_node);
    result.split_gains.push_back(best_gain);
    // Expand the yes subtree first.
    stack.push_back({no_node, std::move(no_members)});
    stack.push_back({yes_node, std::move(yes_members)});
  }
  return result;
}

}  // namespace melhts::hmm
