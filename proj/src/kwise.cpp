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

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace sjlt {
namespace {

using Poly = std::vector<u64>;  // coefficient i multiplies x^i

constexpr std::size_t kKaratsubaCutoff = 32;
constexpr std::size_t kNewtonCutoff = 64;

// Polynomial arithmetic over one field, counting field multiplications.
class PolyArith {
 public:
  explicit PolyArith(const FieldSpec& f) : f_(f) {}

  std::uint64_t mults() const { return mults_; }

  u64 mul(u64 a, u64 b) {
    ++mults_;
    return f_.mul_unchecked(a, b);
  }

  static void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
  }

  Poly multiply(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    multiply_into(a.data(), a.size(), b.data(), b.size(), out.data());
    trim(out);
    return out;
  }

  // p mod m for monic m with deg m >= 1.
  Poly remainder(Poly p, const Poly& m) {
    const std::size_t n = m.size() - 1;
    trim(p);
    if (p.size() <= n) return p;
    const std::size_t q_len = p.size() - n;
    if (n < kNewtonCutoff || q_len < kNewtonCutoff) {
      for (std::size_t i = p.size(); i-- > n;) {
        const u64 c = p[i];
        if (c == 0) continue;
        p[i] = 0;
        for (std::size_t j = 0; j < n; ++j) {
          if (m[j] != 0) p[i - n + j] ^= mul(c, m[j]);
        }
      }
      p.resize(n);
      trim(p);
      return p;
    }
    // Quotient through the reversed polynomials: rev(q) = rev(p) / rev(m)
    // mod x^q_len.
    Poly rev_m(m.rbegin(), m.rend());
    Poly inv = inverse_series(rev_m, q_len);
    Poly rev_p(p.rbegin(), p.rbegin() + static_cast<std::ptrdiff_t>(q_len));
    Poly rev_q = multiply(rev_p, inv);
    rev_q.resize(q_len, 0);
    Poly q(rev_q.rbegin(), rev_q.rend());
    Poly mq = multiply(m, q);
    p.resize(n);
    for (std::size_t i = 0; i < n && i < mq.size(); ++i) p[i] ^= mq[i];
    trim(p);
    return p;
  }

 private:
  // out[0 .. na+nb-1) ^= a * b; out must be zeroed by the caller where needed.
  void multiply_into(const u64* a, std::size_t na, const u64* b, std::size_t nb,
                     u64* out) {
    if (na == 0 || nb == 0) return;
    if (std::min(na, nb) < kKaratsubaCutoff) {
      for (std::size_t i = 0; i < na; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < nb; ++j) {
          if (b[j] != 0) out[i + j] ^= mul(a[i], b[j]);
        }
      }
      return;
    }
    const std::size_t m = (std::max(na, nb) + 1) / 2;
    const std::size_t a0n = std::min(na, m), a1n = na > m ? na - m : 0;
    const std::size_t b0n = std::min(nb, m), b1n = nb > m ? nb - m : 0;

    Poly z0(a0n + b0n - 1, 0);
    multiply_into(a, a0n, b, b0n, z0.data());
    Poly z2(a1n && b1n ? a1n + b1n - 1 : 0, 0);
    if (!z2.empty()) multiply_into(a + m, a1n, b + m, b1n, z2.data());

    Poly sa(a, a + a0n);
    for (std::size_t i = 0; i < a1n; ++i) sa[i] ^= a[m + i];
    Poly sb(b, b + b0n);
    for (std::size_t i = 0; i < b1n; ++i) sb[i] ^= b[m + i];
    Poly z1(sa.size() + sb.size() - 1, 0);
    multiply_into(sa.data(), sa.size(), sb.data(), sb.size(), z1.data());
    for (std::size_t i = 0; i < z0.size(); ++i) z1[i] ^= z0[i];
    for (std::size_t i = 0; i < z2.size(); ++i) z1[i] ^= z2[i];

    for (std::size_t i = 0; i < z0.size(); ++i) out[i] ^= z0[i];
    for (std::size_t i = 0; i < z1.size(); ++i) {
      if (z1[i] != 0) out[m + i] ^= z1[i];
    }
    for (std::size_t i = 0; i < z2.size(); ++i) out[2 * m + i] ^= z2[i];
  }

  // g with f * g = 1 mod x^len, for f[0] = 1. In characteristic two the Newton
  // step g <- g (2 - f g) is g <- f g^2, and squaring is coefficient-wise.
  Poly inverse_series(const Poly& f, std::size_t len) {
    Poly g{1};
    std::size_t prec = 1;
    while (prec < len) {
      const std::size_t next = std::min(2 * prec, len);
      Poly g2(2 * g.size() - 1, 0);
      for (std::size_t i = 0; i < g.size(); ++i) g2[2 * i] = mul(g[i], g[i]);
      g2.resize(std::min(g2.size(), next));
      Poly f_trunc(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(std::min(f.size(), next)));
      g = multiply(f_trunc, g2);
      g.resize(next, 0);
      prec = next;
    }
    return g;
  }

  const FieldSpec& f_;
  std::uint64_t mults_ = 0;
};

void evaluate_group(PolyArith& arith, const Poly& p, std::span<const u64> points,
                    std::span<u64> out) {
  // levels[0] are the leaves x + a_i; each level pairs neighbours, carrying an
  // odd trailing node up unchanged.
  std::vector<std::vector<Poly>> levels;
  levels.emplace_back();
  for (u64 a : points) levels[0].push_back(Poly{a, 1});
  while (levels.back().size() > 1) {
    const auto& below = levels.back();
    std::vector<Poly> above;
    above.reserve((below.size() + 1) / 2);
    for (std::size_t j = 0; j + 1 < below.size(); j += 2) {
      above.push_back(arith.multiply(below[j], below[j + 1]));
    }
    if (below.size() % 2 == 1) above.push_back(below.back());
    levels.push_back(std::move(above));
  }

  std::vector<Poly> rems{arith.remainder(p, levels.back()[0])};
  for (std::size_t lvl = levels.size() - 1; lvl-- > 0;) {
    std::vector<Poly> next(levels[lvl].size());
    for (std::size_t j = 0; j < levels[lvl].size(); ++j) {
      next[j] = arith.remainder(rems[j / 2], levels[lvl][j]);
    }
    rems = std::move(next);
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    out[i] = rems[i].empty() ? 0 : rems[i][0];
  }
}

}  // namespace

KWiseHash::KWiseHash(FieldSpec field, std::vector<u64> coeffs)
    : field_(field), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("KWiseHash needs at least one coefficient");
  for (u64 c : coeffs_) {
    if (!field_.contains(c)) throw std::invalid_argument("KWiseHash coefficient outside field");
  }
}

u64 KWiseHash::operator()(u64 x) const {
  if (!field_.contains(x)) {
    throw std::invalid_argument("hash point outside GF(2^" + std::to_string(field_.w()) + ")");
  }
  u64 acc = coeffs_.back();
  for (std::size_t j = coeffs_.size() - 1; j-- > 0;) {
    acc = field_.mul_unchecked(acc, x) ^ coeffs_[j];
  }
  return acc;
}

#if defined(SJLT_HAVE_PCLMUL)
namespace {

// Horner over eight independent chains held in SSE registers, for fields with
// w <= 32 (so every product fits in 64 bits) that reduce in two folds.
void horner_sse_narrow(const FieldSpec& f, const std::vector<u64>& coeffs,
                       std::span<const u64> points, std::span<u64> out, std::size_t& done) {
  constexpr std::size_t kChains = 8;
  const __m128i low = _mm_cvtsi64_si128(static_cast<long long>(f.reduction_low()));
  const __m128i mask = _mm_cvtsi64_si128(static_cast<long long>(f.mask()));
  const __m128i count = _mm_cvtsi64_si128(f.w());
  const std::size_t t = coeffs.size();

  std::size_t i = 0;
  for (; i + kChains <= points.size(); i += kChains) {
    __m128i acc[kChains];
    __m128i x[kChains];
#pragma GCC unroll 8
    for (std::size_t q = 0; q < kChains; ++q) {
      acc[q] = _mm_cvtsi64_si128(static_cast<long long>(coeffs[t - 1]));
      x[q] = _mm_cvtsi64_si128(static_cast<long long>(points[i + q]));
    }
    for (std::size_t j = t - 1; j-- > 0;) {
      const __m128i cj = _mm_cvtsi64_si128(static_cast<long long>(coeffs[j]));
#pragma GCC unroll 8
      for (std::size_t q = 0; q < kChains; ++q) {
        __m128i p = _mm_clmulepi64_si128(acc[q], x[q], 0x00);
        __m128i hi = _mm_srl_epi64(p, count);
        p = _mm_xor_si128(_mm_and_si128(p, mask), _mm_clmulepi64_si128(hi, low, 0x00));
        hi = _mm_srl_epi64(p, count);
        p = _mm_xor_si128(_mm_and_si128(p, mask), _mm_clmulepi64_si128(hi, low, 0x00));
        acc[q] = _mm_xor_si128(p, cj);
      }
    }
#pragma GCC unroll 8
    for (std::size_t q = 0; q < kChains; ++q) {
      out[i + q] = static_cast<u64>(_mm_cvtsi128_si64(acc[q]));
    }
  }
  done = i;
}

}  // namespace
#endif

void KWiseHash::eval_unchecked(std::span<const u64> points, std::span<u64> out) const {
  std::size_t done = 0;
#if defined(SJLT_HAVE_PCLMUL)
  if (field_.w() <= 32 && field_.folds() <= 2 && coeffs_.size() > 1) {
    // Extra folds on an already reduced value are no-ops, so a field needing
    // fewer than two is also handled.
    horner_sse_narrow(field_, coeffs_, points, out, done);
  }
#endif
  const std::size_t n = points.size();
  const std::size_t t = coeffs_.size();
  const u64 top = coeffs_[t - 1];
  std::size_t i = done;
  for (; i + 4 <= n; i += 4) {
    const u64 x0 = points[i], x1 = points[i + 1], x2 = points[i + 2], x3 = points[i + 3];
    u64 a0 = top, a1 = top, a2 = top, a3 = top;
    for (std::size_t j = t - 1; j-- > 0;) {
      const u64 c = coeffs_[j];
      a0 = field_.mul_unchecked(a0, x0) ^ c;
      a1 = field_.mul_unchecked(a1, x1) ^ c;
      a2 = field_.mul_unchecked(a2, x2) ^ c;
      a3 = field_.mul_unchecked(a3, x3) ^ c;
    }
    out[i] = a0;
    out[i + 1] = a1;
    out[i + 2] = a2;
    out[i + 3] = a3;
  }
  for (; i < n; ++i) {
    u64 acc = top;
    for (std::size_t j = t - 1; j-- > 0;) acc = field_.mul_unchecked(acc, points[i]) ^ coeffs_[j];
    out[i] = acc;
  }
}

KWiseHash sample_kwise_hash(SeedStream& stream, std::size_t t, const FieldSpec& field) {
  if (t == 0) throw std::invalid_argument("sample_kwise_hash: t must be at least 1");
  std::vector<u64> coeffs(t);
  for (auto& c : coeffs) c = stream.next_bits(field.w());
  return KWiseHash(field, std::move(coeffs));
}

u64 eval_hash(const KWiseHash& h, u64 x) { return h(x); }

std::vector<u64> eval_hash_batch(const KWiseHash& h, std::span<const u64> points,
                                 BatchStats* stats) {
  for (u64 x : points) {
    if (!h.field().contains(x)) throw std::invalid_argument("eval_hash_batch: point outside field");
  }
  std::vector<u64> out(points.size());
  PolyArith arith(h.field());
  Poly p = h.coeffs();
  PolyArith::trim(p);
  const std::size_t group = h.t();
  std::uint64_t groups = 0;
  for (std::size_t start = 0; start < points.size(); start += group) {
    const std::size_t len = std::min(group, points.size() - start);
    evaluate_group(arith, p, points.subspan(start, len),
                   std::span<u64>(out).subspan(start, len));
    ++groups;
  }
  if (stats != nullptr) {
    stats->field_mults += arith.mults();
    stats->groups += groups;
  }
  return out;
}

DistinctRowSampler::DistinctRowSampler(std::uint64_t k) : perm_(k) {
  if (k == 0) throw std::invalid_argument("DistinctRowSampler: k must be positive");
  std::iota(perm_.begin(), perm_.end(), std::uint64_t{0});
}

void DistinctRowSampler::sample(SeedStream& stream, std::size_t s,
                                std::span<std::uint64_t> out) {
  const std::uint64_t k = perm_.size();
  if (s == 0 || s > k) {
    throw std::invalid_argument("sample_distinct_rows: need 1 <= s <= k (s=" +
                                std::to_string(s) + ", k=" + std::to_string(k) + ")");
  }
  undo_.clear();
  for (std::size_t j = 0; j < s; ++j) {
    const std::uint64_t r = j + stream.next_below(k - j);
    std::swap(perm_[j], perm_[r]);
    undo_.emplace_back(j, r);
    out[j] = perm_[j];
  }
  for (auto it = undo_.rbegin(); it != undo_.rend(); ++it) {
    std::swap(perm_[it->first], perm_[it->second]);
  }
}

std::vector<std::uint64_t> sample_distinct_rows(SeedStream& stream, std::size_t s,
                                                std::uint64_t k) {
  if (s == 0 || s > k) {
    throw std::invalid_argument("sample_distinct_rows: need 1 <= s <= k");
  }
  DistinctRowSampler sampler(k);
  std::vector<std::uint64_t> out(s);
  sampler.sample(stream, s, out);
  return out;
}

}  // namespace sjlt
