// src/common/binio.hpp

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

#include <bit>
#include <cstdint>
#include <cstring>
#include <string>
#include <type_traits>
#include <vector>

#include "common/error.hpp"

namespace melhts {

static_assert(std::endian::native == std::endian::little ||
                  std::endian::native == std::endian::big,
              "mixed-endian platforms are not supported");

/// Appends little-endian encodings of arithmetic values to a byte buffer.
class ByteWriter {
 public:
  template <typename T>
  void Put(T value) {
    static_assert(std::is_arithmetic_v<T>);
    unsigned char raw[sizeof(T)];
    std::memcpy(raw, &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) {
      for (std::size_t i = 0; i < sizeof(T) / 2; ++i)
        std::swap(raw[i], raw[sizeof(T) - 1 - i]);
    }
    bytes_.insert(bytes_.end(), raw, raw + sizeof(T));
  }

  void PutBytes(const void *data, std::size_t n) {
    auto p = static_cast<const unsigned char *>(data);
    bytes_.insert(bytes_.end(), p, p + n);
  }

  void PutString(const std::string &s) {
    Put<std::uint32_t>(static_cast<std::uint32_t>(s.size()));
    PutBytes(s.data(), s.size());
  }

  const std::vector<unsigned char> &bytes() const { return bytes_; }
  std::vector<unsigned char> Release() { return std::move(bytes_); }

 private:
  std::vector<unsigned char> bytes_;
};

/// Reads little-endian values; every failure reports the byte offset.
class ByteReader {
 public:
  ByteReader(const unsigned char *data, std::size_t size, std::string what)
      : data_(data), size_(size), what_(std::move(what)) {}

  template <typename T>
  T Get() {
    static_assert(std::is_arithmetic_v<T>);
    Need(sizeof(T));
    unsigned char raw[sizeof(T)];
    std::memcpy(raw, data_ + pos_, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) {
      for (std::size_t i = 0; i < sizeof(T) / 2; ++i)
        std::swap(raw[i], raw[sizeof(T) - 1 - i]);
    }
    T value;
    std::memcpy(&value, raw, sizeof(T));
    pos_ += sizeof(T);
    return value;
  }

  std::string GetString() {
    auto n = Get<std::uint32_t>();
    Need(n);
    std::string s(reinterpret_cast<const char *>(data_ + pos_), n);
    pos_ += n;
    return s;
  }

  void GetBytes(void *out, std::size_t n) {
    Need(n);
    std::memcpy(out, data_ + pos_, n);
    pos_ += n;
  }

  std::size_t offset() const { return pos_; }
  std::size_t remaining() const { return size_ - pos_; }

  [[noreturn]] void Corrupt(const std::string &msg) const {
    Fail(ErrorKind::kFormat,
         what_ + ": " + msg + " at byte offset " + std::to_string(pos_));
  }

 private:
  void Need(std::size_t n) const {
    if (size_ - pos_ < n)
      Fail(ErrorKind::kFormat,
           what_ + ": truncated at byte offset " + std::to_string(pos_) +
               " (need " + std::to_string(n) + " more bytes, have " +
               std::to_string(size_ - pos_) + ")");
  }

  const unsigned char *data_;
  std::size_t size_;
  std::size_t pos_ = 0;
  std::string what_;
};

}  // namespace melhts
