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
#include <span>
#include <string>

namespace sjlt {

inline constexpr double kDefaultCk = 8.0;
inline constexpr double kDefaultCs = 2.0;

/// One (distortion, failure probability) target.
struct Requirement {
  double eps = 0.0;
  double delta = 0.0;
};

/// Sizing of a sparse JL embedding from R^d into R^k with s nonzeros per
/// column.
///
/// Derived sizes satisfy s | k with k / s a power of two, so every
/// construction (including the block one) can be sampled from the same
/// parameters. `k_min` keeps the target dimension before that rounding so
/// the sparsity can be overridden without compounding it.
struct JlParams {
  std::uint64_t d = 0;
  double eps = 0.0;
  double delta = 0.0;
  unsigned ell = 0;  // even moment order
  std::uint64_t s = 0;
  std::uint64_t s_pow2 = 0;
  std::uint64_t k = 0;
  std::uint64_t k_min = 0;
  std::uint64_t blocks_pow2 = 0;  // k / s when block-compatible, else 0
  std::uint64_t seed = 0;
  double c_k = kDefaultCk;
  double c_s = kDefaultCs;

  /// s divides k and k / s is a power of two.
  bool block_compatible() const;
  /// Throws std::invalid_argument describing the first violated invariant.
  void validate() const;

  friend bool operator==(const JlParams&, const JlParams&) = default;
};

/// Smallest even integer >= log2(1 / delta).
unsigned moment_order(double delta);

std::uint64_t next_pow2(std::uint64_t x);
unsigned log2_exact(std::uint64_t pow2);

/// Sizes for simultaneous guarantees: s = ceil(c_s * max eps_i^-1 ell_i) and
/// k = ceil(c_k * max eps_i^-2 ell_i), then k rounded up so that s | k and
/// k / s is a power of two. eps and delta record the smallest targets.
JlParams derive_params(std::span<const Requirement> requirements, std::uint64_t d,
                       std::uint64_t seed, double c_k = kDefaultCk, double c_s = kDefaultCs);

JlParams derive_params(double eps, double delta, std::uint64_t d, std::uint64_t seed,
                       double c_k = kDefaultCk, double c_s = kDefaultCs);

/// Same targets with sparsity forced to s; k is re-rounded from k_min.
JlParams with_sparsity(const JlParams& params, std::uint64_t s);

/// Parameters with caller-chosen k and s (no rounding). eps and delta only
/// set ell and are otherwise informational.
JlParams explicit_params(std::uint64_t d, std::uint64_t k, std::uint64_t s, double eps,
                         double delta, std::uint64_t seed);

std::string describe(const JlParams& params);

}  // namespace sjlt
