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

#include "sjlt/params.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sjlt {
namespace {

// ceil that ignores representation error in products like 2 * 6 / 0.25.
std::uint64_t ceil_tolerant(double x) {
  return static_cast<std::uint64_t>(std::ceil(x * (1.0 - 1e-12)));
}

void check_open_half(double v, const char* name) {
  if (!(v > 0.0 && v < 0.5)) {
    std::ostringstream os;
    os << name << " must lie in (0, 1/2), got " << v;
    throw std::invalid_argument(os.str());
  }
}

std::uint64_t round_k(std::uint64_t k_min, std::uint64_t s) {
  const std::uint64_t blocks = next_pow2((std::max(k_min, s) + s - 1) / s);
  return blocks * s;
}

}  // namespace

std::uint64_t next_pow2(std::uint64_t x) { return x <= 1 ? 1 : std::bit_ceil(x); }

unsigned log2_exact(std::uint64_t pow2) {
  if (!std::has_single_bit(pow2)) throw std::invalid_argument("log2_exact: not a power of two");
  return static_cast<unsigned>(std::countr_zero(pow2));
}

unsigned moment_order(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  const double l = std::log2(1.0 / delta);
  auto ell = static_cast<unsigned>(std::ceil(l - 1e-12));
  if (ell % 2 == 1) ++ell;
  return std::max(ell, 2u);
}

bool JlParams::block_compatible() const {
  return s >= 1 && k >= s && k % s == 0 && std::has_single_bit(k / s);
}

void JlParams::validate() const {
  if (d == 0) throw std::invalid_argument("d must be positive");
  if (s == 0) throw std::invalid_argument("s must be positive");
  if (k < s) throw std::invalid_argument("k must be at least s");
  if (ell == 0 || ell % 2 != 0) throw std::invalid_argument("moment order must be even and positive");
  if (s_pow2 != next_pow2(s)) throw std::invalid_argument("s_pow2 must be s rounded up to a power of two");
  if (blocks_pow2 != 0 && blocks_pow2 * s != k) throw std::invalid_argument("blocks_pow2 * s must equal k");
}

JlParams derive_params(std::span<const Requirement> requirements, std::uint64_t d,
                       std::uint64_t seed, double c_k, double c_s) {
  if (requirements.empty()) throw std::invalid_argument("at least one (eps, delta) requirement is needed");
  if (d == 0) throw std::invalid_argument("d must be positive");
  if (!(c_k > 0.0) || !(c_s > 0.0)) throw std::invalid_argument("sizing constants must be positive");
  double s_sup = 0.0;
  double k_sup = 0.0;
  JlParams p;
  p.eps = requirements[0].eps;
  p.delta = requirements[0].delta;
  for (const auto& r : requirements) {
    check_open_half(r.eps, "eps");
    check_open_half(r.delta, "delta");
    const unsigned ell = moment_order(r.delta);
    s_sup = std::max(s_sup, ell / r.eps);
    k_sup = std::max(k_sup, ell / (r.eps * r.eps));
    p.ell = std::max(p.ell, ell);
    p.eps = std::min(p.eps, r.eps);
    p.delta = std::min(p.delta, r.delta);
  }
  p.d = d;
  p.seed = seed;
  p.c_k = c_k;
  p.c_s = c_s;
  p.s = std::max<std::uint64_t>(1, ceil_tolerant(c_s * s_sup));
  p.k_min = std::max<std::uint64_t>(1, ceil_tolerant(c_k * k_sup));
  p.s_pow2 = next_pow2(p.s);
  p.k = round_k(p.k_min, p.s);
  p.blocks_pow2 = p.k / p.s;
  return p;
}

JlParams derive_params(double eps, double delta, std::uint64_t d, std::uint64_t seed,
                       double c_k, double c_s) {
  const Requirement r{eps, delta};
  return derive_params(std::span<const Requirement>(&r, 1), d, seed, c_k, c_s);
}

JlParams with_sparsity(const JlParams& params, std::uint64_t s) {
  if (s == 0) throw std::invalid_argument("sparsity must be positive");
  JlParams p = params;
  p.s = s;
  p.s_pow2 = next_pow2(s);
  p.k = round_k(p.k_min, s);
  p.blocks_pow2 = p.k / s;
  return p;
}

JlParams explicit_params(std::uint64_t d, std::uint64_t k, std::uint64_t s, double eps,
                         double delta, std::uint64_t seed) {
  JlParams p;
  p.d = d;
  p.k = k;
  p.k_min = k;
  p.s = s;
  p.s_pow2 = next_pow2(s);
  p.eps = eps;
  p.delta = delta;
  p.ell = moment_order(delta);
  p.seed = seed;
  p.blocks_pow2 = p.block_compatible() ? k / s : 0;
  p.validate();
  return p;
}

std::string describe(const JlParams& p) {
  std::ostringstream os;
  os << "d=" << p.d << " k=" << p.k << " s=" << p.s << " ell=" << p.ell << " eps=" << p.eps
     << " delta=" << p.delta << " seed=" << p.seed;
  return os.str();
}

}  // namespace sjlt
