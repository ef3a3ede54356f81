// Copyright 2026 The sjlt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sjlt/sketch.hpp"

namespace sjlt {

inline constexpr std::uint32_t kSketchFormatVersion = 1;

/// Little-endian layout:
///   "SJLT" | version u32 | tag u8 | k u64 | d u64 | s u64 | seed u64
///   | d column counts (u64) | nnz pairs of (row u64, value f64).
std::vector<std::uint8_t> encode_sketch(const SparseSketch& sketch);
/// Throws std::runtime_error on truncation, bad magic, unknown version or
/// out-of-range content.
SparseSketch decode_sketch(const std::vector<std::uint8_t>& bytes);

void write_sketch(std::ostream& out, const SparseSketch& sketch);
SparseSketch read_sketch(std::istream& in);
void save_sketch(const std::string& path, const SparseSketch& sketch);
SparseSketch load_sketch(const std::string& path);

namespace wire {

void put_u8(std::vector<std::uint8_t>& out, std::uint8_t v);
void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v);
void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v);
void put_f64(std::vector<std::uint8_t>& out, double v);

/// Bounds-checked little-endian reader.
class Reader {
 public:
  explicit Reader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}
  std::uint8_t u8();
  std::uint32_t u32();
  std::uint64_t u64();
  double f64();
  void expect_magic(const char (&magic)[5]);
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  void need(std::size_t n) const;

  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 0;
};

std::vector<std::uint8_t> read_all(std::istream& in);
std::vector<std::uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes);

}  // namespace wire
}  // namespace sjlt
