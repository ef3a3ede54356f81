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

#include "sjlt/seed.hpp"

#include <algorithm>
#include <stdexcept>

namespace sjlt {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kMasterSalt = 0x5851f42d4c957f2dULL;
constexpr std::uint64_t kLabelSalt = 0xd1342543de82ef95ULL;

std::uint64_t fold_label(std::uint64_t key, std::uint64_t label) {
  return mix64(key ^ mix64(label ^ kLabelSalt));
}

}  // namespace

SeedStream::SeedStream(std::uint64_t master, std::span<const std::uint64_t> path)
    : master_(master), path_(path.begin(), path.end()), key_(mix64(master ^ kMasterSalt)) {
  for (std::uint64_t label : path_) key_ = fold_label(key_, label);
}

std::uint64_t SeedStream::next_word() {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

std::uint64_t SeedStream::next_bits(unsigned n) {
  if (n == 0 || n > 64) throw std::invalid_argument("next_bits: n must be in [1, 64]");
  consumed_ += n;
  if (n == 64 && buffered_ == 0) return next_word();
  std::uint64_t out = 0;
  unsigned have = 0;
  while (have < n) {
    if (buffered_ == 0) {
      buffer_ = next_word();
      buffered_ = 64;
    }
    const unsigned take = std::min(n - have, buffered_);
    const std::uint64_t chunk = take == 64 ? buffer_ : (buffer_ & ((std::uint64_t{1} << take) - 1));
    out |= chunk << have;
    buffer_ = take == 64 ? 0 : buffer_ >> take;
    buffered_ -= take;
    have += take;
  }
  return out;
}

std::uint64_t SeedStream::next_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("next_below: bound must be positive");
  // Lemire's multiply-shift with rejection of the biased low band.
  unsigned __int128 m = static_cast<unsigned __int128>(next_bits(64)) * bound;
  std::uint64_t low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(next_bits(64)) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

SeedStream SeedStream::child(std::uint64_t label) const {
  std::vector<std::uint64_t> path = path_;
  path.push_back(label);
  return SeedStream(master_, path);
}

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
  SeedStream stream(master, path);
  return stream.next_bits(64);
}

}  // namespace sjlt
