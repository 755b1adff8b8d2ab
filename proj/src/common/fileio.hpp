// src/common/fileio.hpp

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

#include <filesystem>
#include <string>
#include <vector>

namespace melhts {

std::vector<unsigned char> ReadFileBytes(const std::filesystem::path &path);
std::string ReadFileText(const std::filesystem::path &path);

// Writes to "<path>.tmp.<pid>" and renames over |path|, so readers never
// observe a partially written file.
void WriteFileAtomic(const std::filesystem::path &path, const void *data,
                     std::size_t size);
void WriteFileAtomic(const std::filesystem::path &path,
                     const std::string &text);

}  // namespace melhts
