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

// Slow reference implementations used only to check the library.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace sjlt::oracle {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Bit-at-a-time multiply: add a for each set bit of b, doubling a and
// reducing by x^w + low whenever it overflows.
inline u64 gf_mul(u64 a, u64 b, unsigned w, u64 low) {
  u64 r = 0;
  for (unsigned bit = 0; bit < w; ++bit) {
    if ((b >> bit) & 1) r ^= a;
    const bool carry = (a >> (w - 1)) & 1;
    a = w == 64 ? (a << 1) : ((a << 1) & ((u64{1} << w) - 1));
    if (carry) a ^= low;
  }
  return r;
}

inline int degree(u128 p) {
  int d = -1;
  while (p != 0) {
    p >>= 1;
    ++d;
  }
  return d;
}

// Polynomial product over GF(2), operands below x^64.
inline u128 poly_mul(u128 a, u128 b) {
  u128 r = 0;
  for (int i = 0; i < 128 && b != 0; ++i, b >>= 1) {
    if (b & 1) r ^= a << i;
  }
  return r;
}

inline std::pair<u128, u128> poly_divmod(u128 a, u128 b) {
  u128 q = 0;
  const int db = degree(b);
  while (degree(a) >= db) {
    const int shift = degree(a) - db;
    q ^= u128{1} << shift;
    a ^= b << shift;
  }
  return {q, a};
}

// Inverse of a modulo x^w + low by the extended Euclidean algorithm.
inline u64 gf_inverse(u64 a, unsigned w, u64 low) {
  u128 r0 = (u128{1} << w) | low;
  u128 r1 = a;
  u128 s0 = 0;
  u128 s1 = 1;
  while (r1 != 0) {
    auto [q, r] = poly_divmod(r0, r1);
    r0 = r1;
    r1 = r;
    const u128 s = s0 ^ poly_mul(q, s1);
    s0 = s1;
    s1 = s;
  }
  return static_cast<u64>(poly_divmod(s0, (u128{1} << w) | low).second);
}

// sum_j c_j x^j with each power built by repeated multiplication.
inline u64 power_sum(const std::vector<u64>& coeffs, u64 x, unsigned w, u64 low) {
  u64 acc = 0;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    u64 term = coeffs[j];
    for (std::size_t e = 0; e < j; ++e) term = gf_mul(term, x, w, low);
    acc ^= term;
  }
  return acc;
}

}  // namespace sjlt::oracle
