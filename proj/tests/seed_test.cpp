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

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

namespace sjlt {
namespace {

TEST(SeedStreamTest, SameMasterAndPathGiveSameBits) {
  SeedStream a(42, {seed_label::kBlock, 3, 9});
  SeedStream b(42, {seed_label::kBlock, 3, 9});
  for (int i = 0; i < 100; ++i) ASSERT_EQ(a.next_bits(64), b.next_bits(64));
}

TEST(SeedStreamTest, BitAccountingIsExact) {
  SeedStream s(1, {5});
  EXPECT_EQ(s.bits_consumed(), 0u);
  s.next_bits(3);
  s.next_bits(17);
  s.next_bits(64);
  EXPECT_EQ(s.bits_consumed(), 84u);
  EXPECT_THROW(s.next_bits(0), std::invalid_argument);
  EXPECT_THROW(s.next_bits(65), std::invalid_argument);
}

TEST(SeedStreamTest, BitsAreHandedOutLowFirstAcrossWordBoundaries) {
  SeedStream whole(9, {1, 2});
  const std::uint64_t w0 = whole.next_bits(64);
  const std::uint64_t w1 = whole.next_bits(64);
  SeedStream parts(9, {1, 2});
  EXPECT_EQ(parts.next_bits(40), w0 & ((std::uint64_t{1} << 40) - 1));
  const std::uint64_t straddle = parts.next_bits(40);
  EXPECT_EQ(straddle, (w0 >> 40) | ((w1 & 0xFFFF) << 24));
}

TEST(SeedStreamTest, DeriveSeedIsFirstWord) {
  SeedStream s(77, {seed_label::kTrial, 12});
  EXPECT_EQ(derive_seed(77, {seed_label::kTrial, 12}), s.next_bits(64));
}

TEST(SeedStreamTest, ChildAppendsLabel) {
  SeedStream parent(5, {1});
  SeedStream direct(5, {1, 8});
  SeedStream child = parent.child(8);
  EXPECT_EQ(child.path(), direct.path());
  EXPECT_EQ(child.next_bits(64), direct.next_bits(64));
}

TEST(SeedStreamTest, NextBelowStaysInRangeAndIsRoughlyUniform) {
  SeedStream s(3, {4});
  std::vector<int> counts(7, 0);
  const int n = 70000;
  for (int i = 0; i < n; ++i) {
    const auto v = s.next_below(7);
    ASSERT_LT(v, 7u);
    ++counts[v];
  }
  for (int c : counts) EXPECT_NEAR(c, n / 7.0, 5 * std::sqrt(n / 7.0));
  EXPECT_EQ(s.next_below(1), 0u);
  EXPECT_THROW(s.next_below(0), std::invalid_argument);
}

// Flipping one bit of one path label should change about half of the first
// 64 output bits; the requirement is at least a quarter on average.
TEST(SeedStreamTest, PathAvalanche) {
  std::mt19937_64 rng(2026);
  double total = 0.0;
  const int samples = 1000;
  for (int i = 0; i < samples; ++i) {
    const std::uint64_t master = rng();
    std::uint64_t path[3] = {rng() % 8, rng(), rng()};
    const std::uint64_t base = SeedStream(master, path).next_bits(64);
    path[rng() % 3] ^= std::uint64_t{1} << (rng() % 64);
    const std::uint64_t flipped = SeedStream(master, path).next_bits(64);
    total += std::popcount(base ^ flipped);
  }
  const double mean = total / samples;
  EXPECT_GE(mean, 16.0);
  EXPECT_NEAR(mean, 32.0, 1.0);
}

TEST(SeedStreamTest, MasterAvalanche) {
  std::mt19937_64 rng(99);
  double total = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t m = rng();
    const std::uint64_t a = derive_seed(m, {1, 2});
    const std::uint64_t b = derive_seed(m ^ (std::uint64_t{1} << (rng() % 64)), {1, 2});
    total += std::popcount(a ^ b);
  }
  EXPECT_NEAR(total / 1000, 32.0, 1.0);
}

TEST(SeedStreamTest, PathLengthMatters) {
  EXPECT_NE(derive_seed(1, {0}), derive_seed(1, {0, 0}));
  EXPECT_NE(derive_seed(1, {}), derive_seed(1, {0}));
}

}  // namespace
}  // namespace sjlt
