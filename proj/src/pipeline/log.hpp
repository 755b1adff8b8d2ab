// src/pipeline/log.hpp

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

#include <charconv>
#include <functional>
#include <sstream>
#include <string>
#include <type_traits>

namespace melhts::pipeline {

using LogSink = std::function<void(const std::string &)>;

/// Builds one `key=value key=value` line and hands it to the sink when it
/// goes out of scope. Values containing spaces or quotes are quoted.
class LogLine {
 public:
  explicit LogLine(const LogSink &sink) : sink_(sink) {}
  LogLine(const LogLine &) = delete;
  LogLine &operator=(const LogLine &) = delete;
  ~LogLine() {
    if (sink_) sink_(out_.str());
  }

  template <typename T>
  LogLine &operator()(const std::string &key, const T &value) {
    if (!first_) out_ << ' ';
    first_ = false;
    out_ << key << '=';
    if constexpr (std::is_convertible_v<T, std::string>) {
      Quote(std::string(value));
    } else if constexpr (std::is_floating_point_v<T>) {
      // Shortest text that reads back to the same double.
      char buf[32];
      auto res = std::to_chars(buf, buf + sizeof buf, static_cast<double>(value));
      out_.write(buf, res.ptr - buf);
    } else {
      out_ << value;
    }
    return *this;
  }

 private:
  void Quote(const std::string &s) {
    if (!s.empty() && s.find_first_of(" \t\"=") == std::string::npos) {
      out_ << s;
      return;
    }
    out_ << '"';
    for (char c : s) {
      if (c == '"' || c == '\\') out_ << '\\';
      out_ << (c == '\n' ? ' ' : c);
    }
    out_ << '"';
  }

  const LogSink &sink_;
  std::ostringstream out_;
  bool first_ = true;
};

inline LogLine Emit(const LogSink &sink) { return LogLine(sink); }

}  // namespace melhts::pipeline
