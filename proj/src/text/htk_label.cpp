// src/text/htk_label.cpp

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

#include "text/htk_label.hpp"

#include <sstream>

#include "common/error.hpp"
#include "common/fileio.hpp"

namespace melhts::text {

std::vector<LabelEntry> ParseHtkLabels(const std::string &text) {
  std::vector<LabelEntry> out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    LabelEntry e;
    if (!(fields >> e.start)) continue;  // blank line
    if (!(fields >> e.end >> e.label) || e.end < e.start)
      Fail(ErrorKind::kFormat,
           "label line " + std::to_string(line_no) +
               ": expected 'start end label' with end >= start");
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<LabelEntry> ReadHtkLabels(const std::filesystem::path &path) {
  return ParseHtkLabels(ReadFileText(path));
}

std::string FormatHtkLabels(const std::vector<LabelEntry> &entries) {
  std::string out;
  for (const auto &e : entries)
    out += std::to_string(e.start) + " " + std::to_string(e.end) + " " +
           e.label + "\n";
  return out;
}

void WriteHtkLabels(const std::filesystem::path &path,
                    const std::vector<LabelEntry> &entries) {
  WriteFileAtomic(path, FormatHtkLabels(entries));
}

}  // namespace melhts::text
