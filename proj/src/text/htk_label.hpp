// src/text/htk_label.hpp

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
#include <string>
#include <vector>

namespace melhts::text {

/// One line of an HTK label file: times in 100 ns units.
struct LabelEntry {
  std::int64_t start = 0;
  std::int64_t end = 0;
  std::string label;
};

inline std::int64_t MsToHtk(double ms) {
  return static_cast<std::int64_t>(ms * 10000.0 + (ms >= 0 ? 0.5 : -0.5));
}
inline double HtkToMs(std::int64_t units) {
  return static_cast<double>(units) / 10000.0;
}

std::vector<LabelEntry> ReadHtkLabels(const std::filesystem::path &path);
std::vector<LabelEntry> ParseHtkLabels(const std::string &text);
std::string FormatHtkLabels(const std::vector<LabelEntry> &entries);
void WriteHtkLabels(const std::filesystem::path &path,
                    const std::vector<LabelEntry> &entries);

}  // namespace melhts::text
