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

#include "sjlt/gf2w.hpp"

#include <array>
#include <bit>
#include <stdexcept>
#include <string>
#include <vector>

namespace sjlt {
namespace {

u64 width_mask(unsigned w) { return w == 64 ? ~u64{0} : (u64{1} << w) - 1; }

int degree(u128 p) {
  if (p == 0) return -1;
  const u64 hi = static_cast<u64>(p >> 64);
  if (hi != 0) return 127 - std::countl_zero(hi);
  return 63 - std::countl_zero(static_cast<u64>(p));
}

// Carry-less polynomial gcd over GF(2); both operands fit in 65 bits.
u128 poly_gcd(u128 a, u128 b) {
  while (b != 0) {
    const int db = degree(b);
    while (degree(a) >= db) {
      a ^= b << (degree(a) - db);
    }
    std::swap(a, b);
  }
  return a;
}

std::vector<unsigned> prime_factors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

FieldSpec search_field(unsigned w) {
  switch (w) {
    case 8: return FieldSpec::make(8, 0x1B);
    case 16: return FieldSpec::make(16, 0x2B);
    case 32: return FieldSpec::make(32, 0x8D);
    case 64: return FieldSpec::make(64, 0x1B);
    default: break;
  }
  if (w == 1) return FieldSpec::make(1, 1);
  for (unsigned a = 1; a < w; ++a) {
    const u64 low = 1 | (u64{1} << a);
    if (is_irreducible(w, low)) return FieldSpec::make(w, low);
  }
  for (unsigned c = 3; c < w; ++c) {
    for (unsigned b = 2; b < c; ++b) {
      for (unsigned a = 1; a < b; ++a) {
        const u64 low = 1 | (u64{1} << a) | (u64{1} << b) | (u64{1} << c);
        if (is_irreducible(w, low)) return FieldSpec::make(w, low);
      }
    }
  }
  throw std::logic_error("no irreducible trinomial or pentanomial of degree " +
                         std::to_string(w));
}

}  // namespace

bool is_irreducible(unsigned w, u64 low) {
  if (w < 1 || w > 64) return false;
  const u64 mask = width_mask(w);
  if ((low & ~mask) != 0) return false;
  if (w == 1) return true;
  if ((low & 1) == 0) return false;  // divisible by x

  // x^(2^i) mod f by repeated squaring, starting from x.
  const u64 x = 2;
  std::vector<u64> frob(w + 1);
  frob[0] = x;
  for (unsigned i = 1; i <= w; ++i) {
    frob[i] = detail::mulmod(frob[i - 1], frob[i - 1], w, low, mask);
  }
  if (frob[w] != x) return false;
  const u128 f = (static_cast<u128>(1) << w) | low;
  for (unsigned p : prime_factors(w)) {
    const u64 g = frob[w / p] ^ x;
    if (degree(poly_gcd(f, g)) != 0) return false;
  }
  return true;
}

FieldSpec FieldSpec::make(unsigned w, u64 reduction_low) {
  if (w < 1 || w > 64) {
    throw std::invalid_argument("field width must be in [1, 64], got " +
                                std::to_string(w));
  }
  if (!is_irreducible(w, reduction_low)) {
    throw std::invalid_argument("reduction polynomial is not irreducible");
  }
  return FieldSpec(w, reduction_low);
}

const FieldSpec& default_field(unsigned w) {
  static const std::vector<FieldSpec> fields = [] {
    std::vector<FieldSpec> out;
    out.reserve(64);
    for (unsigned i = 1; i <= 64; ++i) out.push_back(search_field(i));
    return out;
  }();
  if (w < 1 || w > 64) {
    throw std::invalid_argument("field width must be in [1, 64], got " +
                                std::to_string(w));
  }
  return fields[w - 1];
}

unsigned width_for(u128 count, unsigned min_w) {
  unsigned w = 0;
  while (w < 65 && (static_cast<u128>(1) << w) < count) ++w;
  if (w > 64) throw std::invalid_argument("domain needs more than 64 bits");
  return w < min_w ? min_w : w;
}

u64 gf_mul(u64 a, u64 b, const FieldSpec& f) {
  if (!f.contains(a) || !f.contains(b)) {
    throw std::invalid_argument("gf_mul: operand outside GF(2^" +
                                std::to_string(f.w()) + ")");
  }
  return f.mul_unchecked(a, b);
}

u64 gf_pow(u64 a, u128 e, const FieldSpec& f) {
  if (!f.contains(a)) throw std::invalid_argument("gf_pow: operand out of range");
  u64 result = 1;
  u64 base = a;
  while (e != 0) {
    if (e & 1) result = f.mul_unchecked(result, base);
    base = f.mul_unchecked(base, base);
    e >>= 1;
  }
  return result;
}

}  // namespace sjlt
