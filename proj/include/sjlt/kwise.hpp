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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sjlt/gf2w.hpp"
#include "sjlt/seed.hpp"

namespace sjlt {

/// A t-wise independent hash: a polynomial of degree t - 1 over GF(2^w) with
/// uniformly random coefficients, evaluated at the hashed point.
class KWiseHash {
 public:
  /// `coeffs` is constant term first; must be non-empty with every entry in
  /// the field.
  KWiseHash(FieldSpec field, std::vector<u64> coeffs);

  const FieldSpec& field() const { return field_; }
  const std::vector<u64>& coeffs() const { return coeffs_; }
  std::size_t t() const { return coeffs_.size(); }

  /// Horner evaluation. Throws std::invalid_argument if x is outside the field.
  u64 operator()(u64 x) const;

  /// Horner evaluation of many points with several independent chains.
  /// Caller guarantees every point is a field element.
  void eval_unchecked(std::span<const u64> points, std::span<u64> out) const;

  friend bool operator==(const KWiseHash&, const KWiseHash&) = default;

 private:
  FieldSpec field_;
  std::vector<u64> coeffs_;
};

/// Draws t coefficients of w bits each from `stream` (exactly t * w bits).
KWiseHash sample_kwise_hash(SeedStream& stream, std::size_t t, const FieldSpec& field);

u64 eval_hash(const KWiseHash& h, u64 x);

/// Optional counters filled by eval_hash_batch.
struct BatchStats {
  std::uint64_t field_mults = 0;
  std::uint64_t groups = 0;
};

/// Evaluates h at every point. Points are split into consecutive groups of
/// size t; each group is evaluated by building its subproduct tree and
/// reducing h modulo the tree top-down. Output equals Horner evaluation
/// exactly.
std::vector<u64> eval_hash_batch(const KWiseHash& h, std::span<const u64> points,
                                 BatchStats* stats = nullptr);

/// Partial Fisher-Yates over [k] with a reusable scratch permutation, so each
/// draw costs O(s) after an O(k) setup.
class DistinctRowSampler {
 public:
  explicit DistinctRowSampler(std::uint64_t k);

  std::uint64_t k() const { return perm_.size(); }

  /// Writes s distinct values of [k] (in draw order) into `out`.
  void sample(SeedStream& stream, std::size_t s, std::span<std::uint64_t> out);

 private:
  std::vector<std::uint64_t> perm_;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> undo_;
};

/// s distinct integers in [k], uniformly distributed as an ordered sample.
std::vector<std::uint64_t> sample_distinct_rows(SeedStream& stream, std::size_t s,
                                                std::uint64_t k);

}  // namespace sjlt
