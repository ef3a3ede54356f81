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
#include <initializer_list>
#include <span>
#include <vector>

namespace sjlt {

/// 64-bit avalanche finalizer (splitmix64 / Stafford variant 13).
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Labels for the first path element, identifying the consumer of a stream.
namespace seed_label {
inline constexpr std::uint64_t kBlock = 1;
inline constexpr std::uint64_t kGraph = 2;
inline constexpr std::uint64_t kDks = 3;
inline constexpr std::uint64_t kDense = 4;
inline constexpr std::uint64_t kCode = 5;
inline constexpr std::uint64_t kRandomCode = 6;
inline constexpr std::uint64_t kTrial = 7;
inline constexpr std::uint64_t kAnalysis = 8;

inline constexpr std::uint64_t kRowHash = 100;
inline constexpr std::uint64_t kSignHash = 101;
inline constexpr std::uint64_t kRows = 102;
}  // namespace seed_label

/// A deterministic bit stream derived from a master seed and a label path.
///
/// The path is folded into a 64-bit key with one mixing round per label; the
/// stream is then mix64(key + (j + 1) * golden) for word j. Bits are handed
/// out least-significant first and the number consumed is tracked, so callers
/// can account for seed length exactly.
class SeedStream {
 public:
  SeedStream(std::uint64_t master, std::span<const std::uint64_t> path);
  SeedStream(std::uint64_t master, std::initializer_list<std::uint64_t> path)
      : SeedStream(master, std::span<const std::uint64_t>(path.begin(), path.size())) {}

  std::uint64_t master() const { return master_; }
  const std::vector<std::uint64_t>& path() const { return path_; }

  /// Next `n` bits (1 <= n <= 64) as an integer in [0, 2^n).
  std::uint64_t next_bits(unsigned n);
  /// Uniform integer in [0, bound) by multiply-and-reject; bound >= 1.
  std::uint64_t next_below(std::uint64_t bound);

  std::uint64_t bits_consumed() const { return consumed_; }

  /// Stream for path + {label}, starting from bit 0.
  SeedStream child(std::uint64_t label) const;

 private:
  std::uint64_t next_word();

  std::uint64_t master_;
  std::vector<std::uint64_t> path_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::uint64_t buffer_ = 0;
  unsigned buffered_ = 0;
  std::uint64_t consumed_ = 0;
};

/// A 64-bit sub-seed for (master, path); equal to the first 64 bits of the
/// corresponding stream.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path);

}  // namespace sjlt
