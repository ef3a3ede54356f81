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

// Arithmetic in GF(2^w) for 1 <= w <= 64, elements stored in the low w bits
// of a uint64_t. Multiplication is a carry-less product followed by folding
// reduction against the low part of the reduction polynomial.

#include <cstdint>

#if defined(SJLT_HAVE_PCLMUL)
#include <wmmintrin.h>
#endif

namespace sjlt {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

namespace detail {

inline u128 clmul64(u64 a, u64 b) {
#if defined(SJLT_HAVE_PCLMUL)
  const __m128i va = _mm_cvtsi64_si128(static_cast<long long>(a));
  const __m128i vb = _mm_cvtsi64_si128(static_cast<long long>(b));
  const __m128i p = _mm_clmulepi64_si128(va, vb, 0x00);
  const u64 lo = static_cast<u64>(_mm_cvtsi128_si64(p));
  const u64 hi = static_cast<u64>(_mm_cvtsi128_si64(_mm_unpackhi_epi64(p, p)));
  return (static_cast<u128>(hi) << 64) | lo;
#else
  // 4-bit windowed shift-and-xor.
  u128 table[16];
  table[0] = 0;
  for (int i = 1; i < 16; ++i) {
    table[i] = (table[i >> 1] << 1) ^ ((i & 1) ? static_cast<u128>(a) : 0);
  }
  u128 r = 0;
  for (int shift = 60; shift >= 0; shift -= 4) {
    r = (r << 4) ^ table[(b >> shift) & 0xF];
  }
  return r;
#endif
}

/// (a * b) mod (x^w + low) for a, b of degree < w. Valid for any
/// polynomial, irreducible or not.
inline u64 mulmod(u64 a, u64 b, unsigned w, u64 low, u64 mask) {
  u128 p = clmul64(a, b);
  if (w == 64) {
    u64 hi = static_cast<u64>(p >> 64);
    u64 lo = static_cast<u64>(p);
    while (hi != 0) {
      const u128 f = clmul64(hi, low);
      lo ^= static_cast<u64>(f);
      hi = static_cast<u64>(f >> 64);
    }
    return lo;
  }
  u128 hi = p >> w;
  while (hi != 0) {
    p = (p & mask) ^ clmul64(static_cast<u64>(hi), low);
    hi = p >> w;
  }
  return static_cast<u64>(p);
}

}  // namespace detail

/// The field GF(2^w) = GF(2)[x] / (reduction polynomial).
///
/// `low` holds the reduction polynomial without its x^w term, so the full
/// polynomial is x^w + low. Construct through `FieldSpec::make` (which runs
/// the irreducibility test) or `default_field`.
class FieldSpec {
 public:
  /// Validates that `reduction_low | (1 << w)` is irreducible over GF(2).
  /// Throws std::invalid_argument otherwise.
  static FieldSpec make(unsigned w, u64 reduction_low);

  unsigned w() const { return w_; }
  u64 reduction_low() const { return low_; }
  /// Mask of valid element bits, 2^w - 1.
  u64 mask() const { return mask_; }
  /// Number of field elements, as a 128-bit value (2^64 for w = 64).
  u128 order() const { return static_cast<u128>(1) << w_; }
  bool contains(u64 a) const { return (a & ~mask_) == 0; }

  /// Product of two elements; inputs are not range-checked here.
  u64 mul_unchecked(u64 a, u64 b) const {
    return detail::mulmod(a, b, w_, low_, mask_);
  }

  /// Worst-case number of folding rounds needed to reduce a product.
  unsigned folds() const { return folds_; }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  FieldSpec(unsigned w, u64 low)
      : w_(w), low_(low), mask_(w == 64 ? ~u64{0} : (u64{1} << w) - 1) {
    const int r = low == 0 ? -1 : 63 - __builtin_clzll(low);
    int deg = 2 * static_cast<int>(w) - 2;
    while (deg >= static_cast<int>(w)) {
      deg = deg - static_cast<int>(w) + r;
      ++folds_;
    }
  }

  unsigned w_ = 0;
  u64 low_ = 0;
  u64 mask_ = 0;
  unsigned folds_ = 0;
};

/// Standard field for width w: x^8+x^4+x^3+x+1, x^16+x^5+x^3+x+1,
/// x^32+x^7+x^3+x^2+1, x^64+x^4+x^3+x+1 for the machine widths; for any other
/// width the lowest-weight, numerically smallest irreducible polynomial.
/// Results are cached per width.
const FieldSpec& default_field(unsigned w);

/// Smallest width (at least `min_w`) whose field holds `count` distinct
/// elements, i.e. max(min_w, ceil(log2(count))). Throws if more than 64 bits
/// would be needed.
unsigned width_for(u128 count, unsigned min_w = 8);

/// Rabin's irreducibility test for x^w + low over GF(2).
bool is_irreducible(unsigned w, u64 reduction_low);

/// Checked multiplication: throws std::invalid_argument when an input is not
/// an element of `f`.
u64 gf_mul(u64 a, u64 b, const FieldSpec& f);

/// a^e by square-and-multiply.
u64 gf_pow(u64 a, u128 e, const FieldSpec& f);

}  // namespace sjlt
