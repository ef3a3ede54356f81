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

#include "sjlt/kwise.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "oracles.hpp"

namespace sjlt {
namespace {

KWiseHash random_hash(std::mt19937_64& rng, std::size_t t, const FieldSpec& f) {
  std::vector<u64> c(t);
  for (auto& v : c) v = rng() & f.mask();
  return KWiseHash(f, c);
}

TEST(KWiseHashTest, ConstantHash) {
  SeedStream s(0, {1});
  const KWiseHash h = sample_kwise_hash(s, 1, default_field(16));
  for (u64 x : {0u, 1u, 77u, 65535u}) EXPECT_EQ(eval_hash(h, x), h.coeffs()[0]);
}

TEST(KWiseHashTest, SamplingIsDeterministicAndAccounted) {
  const FieldSpec& f = default_field(16);
  SeedStream a(0, {seed_label::kBlock, seed_label::kRowHash});
  SeedStream b(0, {seed_label::kBlock, seed_label::kRowHash});
  const KWiseHash ha = sample_kwise_hash(a, 4, f);
  const KWiseHash hb = sample_kwise_hash(b, 4, f);
  EXPECT_EQ(ha, hb);
  EXPECT_EQ(a.bits_consumed(), 4u * 16u);
  EXPECT_EQ(ha.t(), 4u);
  for (u64 c : ha.coeffs()) EXPECT_TRUE(f.contains(c));
  SeedStream z(0, {1});
  EXPECT_THROW(sample_kwise_hash(z, 0, f), std::invalid_argument);
}

TEST(KWiseHashTest, RejectsBadCoefficients) {
  EXPECT_THROW(KWiseHash(default_field(8), {}), std::invalid_argument);
  EXPECT_THROW(KWiseHash(default_field(8), {0x100}), std::invalid_argument);
}

TEST(KWiseHashTest, ZeroGivesConstantTerm) {
  std::mt19937_64 rng(1);
  const KWiseHash h = random_hash(rng, 8, default_field(32));
  EXPECT_EQ(eval_hash(h, 0), h.coeffs()[0]);
  EXPECT_THROW(eval_hash(h, u64{1} << 32), std::invalid_argument);
}

TEST(KWiseHashTest, HornerMatchesPowerSum) {
  std::mt19937_64 rng(5);
  for (unsigned w : {8u, 13u, 16u, 32u, 61u, 64u}) {
    const FieldSpec& f = default_field(w);
    const KWiseHash h = random_hash(rng, 8, f);
    for (u64 x : {u64{5}, rng() & f.mask(), rng() & f.mask()}) {
      EXPECT_EQ(eval_hash(h, x), oracle::power_sum(h.coeffs(), x, w, f.reduction_low())) << w;
    }
  }
}

TEST(KWiseHashTest, UncheckedBatchMatchesHorner) {
  std::mt19937_64 rng(8);
  for (unsigned w : {8u, 16u, 24u, 32u, 48u, 64u}) {
    const FieldSpec& f = default_field(w);
    for (std::size_t t : {1u, 2u, 5u, 12u}) {
      const KWiseHash h = random_hash(rng, t, f);
      std::vector<u64> pts(37);
      for (auto& p : pts) p = rng() & f.mask();
      std::vector<u64> out(pts.size());
      h.eval_unchecked(pts, out);
      for (std::size_t i = 0; i < pts.size(); ++i) ASSERT_EQ(out[i], eval_hash(h, pts[i]));
    }
  }
}

TEST(EvalHashBatchTest, EmptyInput) {
  std::mt19937_64 rng(2);
  const KWiseHash h = random_hash(rng, 4, default_field(16));
  EXPECT_TRUE(eval_hash_batch(h, {}).empty());
}

TEST(EvalHashBatchTest, RejectsPointsOutsideField) {
  std::mt19937_64 rng(2);
  const KWiseHash h = random_hash(rng, 4, default_field(8));
  const std::vector<u64> pts = {1, 300};
  EXPECT_THROW(eval_hash_batch(h, pts), std::invalid_argument);
}

TEST(EvalHashBatchTest, ThousandRandomInstancesMatchHorner) {
  std::mt19937_64 rng(1234);
  const unsigned widths[] = {8, 16, 32, 64};
  for (int inst = 0; inst < 1000; ++inst) {
    const FieldSpec& f = default_field(widths[inst % 4]);
    const std::size_t t = 2 + rng() % 63;
    const KWiseHash h = random_hash(rng, t, f);
    std::vector<u64> pts(1 + rng() % 200);
    for (auto& p : pts) p = rng() & f.mask();
    if (pts.size() > 3) pts[2] = pts[0];  // duplicates are allowed
    const auto out = eval_hash_batch(h, pts);
    ASSERT_EQ(out.size(), pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) ASSERT_EQ(out[i], eval_hash(h, pts[i])) << inst;
  }
}

TEST(EvalHashBatchTest, LargeDegreeAndSubquadraticCount) {
  std::mt19937_64 rng(77);
  const FieldSpec& f = default_field(16);
  auto run = [&](std::size_t t) {
    const KWiseHash h = random_hash(rng, t, f);
    std::vector<u64> pts(t);
    std::iota(pts.begin(), pts.end(), u64{0});
    BatchStats stats;
    const auto out = eval_hash_batch(h, pts, &stats);
    for (std::size_t i = 0; i < t; ++i) EXPECT_EQ(out[i], eval_hash(h, pts[i]));
    EXPECT_EQ(stats.groups, 1u);
    return static_cast<double>(stats.field_mults);
  };
  const double m256 = run(256);
  const double m1024 = run(1024);
  // Horner needs t^2 multiplications: a 16x jump for 4x the degree.
  EXPECT_LT(m1024, 1024.0 * 1023.0);
  EXPECT_LT(m1024 / m256, 12.0);
}

TEST(KWiseHashTest, PairwiseIndependenceExhaustive) {
  const FieldSpec& f = default_field(8);
  const u64 x1 = 3;
  const u64 x2 = 200;
  std::vector<int> counts(1 << 16, 0);
  for (u64 c0 = 0; c0 < 256; ++c0) {
    for (u64 c1 = 0; c1 < 256; ++c1) {
      const KWiseHash h(f, {c0, c1});
      ++counts[(h(x1) << 8) | h(x2)];
    }
  }
  EXPECT_TRUE(std::all_of(counts.begin(), counts.end(), [](int c) { return c == 1; }));
}

TEST(DistinctRowsTest, FullPermutation) {
  SeedStream s(4, {1});
  auto rows = sample_distinct_rows(s, 50, 50);
  std::sort(rows.begin(), rows.end());
  for (std::uint64_t i = 0; i < 50; ++i) EXPECT_EQ(rows[i], i);
}

TEST(DistinctRowsTest, AlwaysDistinctAndReusable) {
  DistinctRowSampler sampler(100);
  std::vector<std::uint64_t> out(17);
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    SeedStream s(seed, {2});
    sampler.sample(s, out.size(), out);
    const std::set<std::uint64_t> unique(out.begin(), out.end());
    ASSERT_EQ(unique.size(), out.size());
    ASSERT_LT(*unique.rbegin(), 100u);
    SeedStream again(seed, {2});
    ASSERT_EQ(sample_distinct_rows(again, out.size(), 100), out);
  }
}

TEST(DistinctRowsTest, RejectsOversizedSample) {
  SeedStream s(1, {1});
  EXPECT_THROW(sample_distinct_rows(s, 5, 4), std::invalid_argument);
}

TEST(DistinctRowsTest, SingleDrawIsFair) {
  int zeros = 0;
  const int n = 100000;
  for (int seed = 0; seed < n; ++seed) {
    SeedStream s(static_cast<std::uint64_t>(seed), {seed_label::kRows});
    zeros += sample_distinct_rows(s, 1, 2)[0] == 0;
  }
  EXPECT_NEAR(static_cast<double>(zeros) / n, 0.5, 0.01);
}

}  // namespace
}  // namespace sjlt
