// src/common/error.hpp

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

#include <stdexcept>
#include <string>

namespace melhts {

enum class ErrorKind {
  kParameter,  // invalid argument or configuration value
  kInput,      // data too short / malformed for the operation
  kFormat,     // corrupt or unexpected file contents
  kIo,         // file system failure
  kData,       // corpus-level problem (OOV word, too little data)
  kAlignment,  // no feasible state path
  kInternal,   // broken invariant
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void Fail(ErrorKind kind, const std::string &what) {
  throw Error(kind, what);
}

inline void Require(bool cond, ErrorKind kind, const std::string &what) {
  if (!cond) throw Error(kind, what);
}

}  // namespace melhts
