// src/hmm/model.hpp

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
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "hmm/gaussian.hpp"
#include "hmm/tree.hpp"
#include "text/phones.hpp"

namespace melhts::hmm {

struct HmmState {
  Gaussian pdf;
  double occupancy = 0.0;
  friend bool operator==(const HmmState &, const HmmState &) = default;
};

// State duration in frames.
struct DurationModel {
  double mean = 1.0;
  double var = 1.0;
  friend bool operator==(const DurationModel &, const DurationModel &) = default;
};

/// Left-to-right phone model without skips. State i moves on with
/// probability 1 - self_loop[i]; leaving the last state ends the phone.
struct PhoneHmm {
  std::vector<HmmState> states;
  std::vector<double> self_loop;
  std::vector<DurationModel> durations;

  std::size_t num_states() const { return states.size(); }
  friend bool operator==(const PhoneHmm &, const PhoneHmm &) = default;
};

using PhoneModels = std::map<std::string, PhoneHmm>;

// Throws kInternal if any invariant of the phone models is broken.
void CheckPhoneModels(const PhoneModels &models);

/// Trained synthesis model: monophones for alignment, plus one decision tree
/// per (phone, state) whose leaves index tied Gaussians and durations.
struct AcousticModel {
  // Feature layout: static_dim mel coefficients, then deltas and
  // delta-deltas computed with delta_window.
  int static_dim = 0;
  int delta_window = 2;
  int num_states = 5;
  double frame_shift_ms = 10.0;
  int sample_rate_hz = 16000;
  int num_filters = 0;
  double log_floor = 0.0;

  text::PhoneSet phone_set;
  std::vector<double> var_floor;
  PhoneModels monophones;
  std::vector<Question> questions;
  std::vector<DecisionTree> trees;
  std::vector<Gaussian> leaf_pdfs;
  std::vector<DurationModel> leaf_durations;
  std::vector<double> leaf_occupancy;

  int feature_dim() const { return 3 * static_dim; }
  // nullptr when the phone was never trained.
  const DecisionTree *FindTree(const std::string &phone, int state) const;
};

inline constexpr std::uint32_t kModelVersion = 1;

// Little-endian layout: "MHMM", u32 version, then the fields of
// AcousticModel in declaration order (see model.cpp).
std::vector<unsigned char> SerializeModel(const AcousticModel &model);
AcousticModel DeserializeModel(const std::vector<unsigned char> &bytes,
                               const std::string &what = "model");
void SaveModel(const std::filesystem::path &path, const AcousticModel &model);
AcousticModel LoadModel(const std::filesystem::path &path);

}  // namespace melhts::hmm
