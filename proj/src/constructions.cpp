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

#include "sjlt/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sjlt/kwise.hpp"
#include "sjlt/seed.hpp"

namespace sjlt {
namespace {

using seed_label::kRowHash;
using seed_label::kRows;
using seed_label::kSignHash;

FieldSpec field_for(std::uint64_t domain, std::uint64_t range) {
  return default_field(width_for(std::max(domain, range)));
}

std::uint64_t checked_product(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) throw std::invalid_argument("sketch dimensions overflow 64 bits");
  return a * b;
}

// Hashes a column's points (i << shift) | j, j < n, with both h and sigma.
class PointHasher {
 public:
  PointHasher(unsigned shift, std::size_t n) : shift_(shift), points_(n), out_(n) {}

  std::span<const u64> run(const KWiseHash& h, std::uint64_t i, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) points_[j] = (i << shift_) | j;
    h.eval_unchecked({points_.data(), n}, {out_.data(), n});
    return {out_.data(), n};
  }
  std::span<const u64> points(std::size_t n) const { return {points_.data(), n}; }

 private:
  unsigned shift_;
  std::vector<u64> points_;
  std::vector<u64> out_;
};

class BlockSampler final : public ColumnSampler {
 public:
  explicit BlockSampler(const JlParams& p)
      : ColumnSampler(ConstructionTag::kBlock, p.k, p.d, p.s, p.seed),
        shift_(log2_exact(p.s_pow2)),
        blocks_(p.k / p.s),
        inv_(1.0 / std::sqrt(static_cast<double>(p.s))),
        rows_(shift_, p.s),
        signs_(shift_, p.s) {
    if (!p.block_compatible()) {
      throw std::invalid_argument("block construction needs s | k with k / s a power of two");
    }
    const FieldSpec f = field_for(checked_product(p.d, p.s_pow2), p.k);
    w_ = f.w();
    SeedStream hs(p.seed, {seed_label::kBlock, kRowHash});
    SeedStream ss(p.seed, {seed_label::kBlock, kSignHash});
    h_ = std::make_unique<KWiseHash>(sample_kwise_hash(hs, 2 * p.ell, f));
    sigma_ = std::make_unique<KWiseHash>(sample_kwise_hash(ss, 2 * p.ell, f));
    seed_bits_ = hs.bits_consumed() + ss.bits_consumed();
  }

  void column(std::uint64_t i, std::vector<Entry>& out) override {
    const std::size_t n = s();
    const auto h = rows_.run(*h_, i, n);
    const auto g = signs_.run(*sigma_, i, n);
    out.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
      out[r].row = r * blocks_ + (h[r] & (blocks_ - 1));
      out[r].value = (g[r] & 1) ? -inv_ : inv_;
    }
  }

 private:
  unsigned shift_;
  std::uint64_t blocks_;
  double inv_;
  PointHasher rows_;
  PointHasher signs_;
  std::unique_ptr<KWiseHash> h_;
  std::unique_ptr<KWiseHash> sigma_;
};

class GraphSampler final : public ColumnSampler {
 public:
  explicit GraphSampler(const JlParams& p)
      : ColumnSampler(ConstructionTag::kGraph, p.k, p.d, p.s, p.seed),
        inv_(1.0 / std::sqrt(static_cast<double>(p.s))),
        signs_(log2_exact(p.s_pow2), p.s),
        picker_(p.k),
        rows_(p.s) {
    if (p.s > p.k) throw std::invalid_argument("graph construction needs s <= k");
    const FieldSpec f = field_for(checked_product(p.d, p.s_pow2), p.k);
    w_ = f.w();
    SeedStream ss(p.seed, {seed_label::kGraph, kSignHash});
    sigma_ = std::make_unique<KWiseHash>(sample_kwise_hash(ss, 2 * p.ell, f));
    seed_bits_ = ss.bits_consumed();
  }

  void column(std::uint64_t i, std::vector<Entry>& out) override {
    const std::size_t n = s();
    SeedStream stream(seed(), {seed_label::kGraph, kRows, i});
    picker_.sample(stream, n, rows_);
    const auto g = signs_.run(*sigma_, i, n);
    out.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      out[j].row = rows_[j];
      out[j].value = (g[j] & 1) ? -inv_ : inv_;
    }
  }

 private:
  double inv_;
  PointHasher signs_;
  DistinctRowSampler picker_;
  std::vector<std::uint64_t> rows_;
  std::unique_ptr<KWiseHash> sigma_;
};

class DksSampler final : public ColumnSampler {
 public:
  explicit DksSampler(const JlParams& p)
      : ColumnSampler(ConstructionTag::kDks, next_pow2(p.k), p.d, p.s, p.seed),
        inv_(1.0 / std::sqrt(static_cast<double>(p.s))),
        rows_(log2_exact(p.s_pow2), p.s),
        signs_(log2_exact(p.s_pow2), p.s) {
    const FieldSpec f = field_for(checked_product(p.d, p.s_pow2), k());
    w_ = f.w();
    SeedStream hs(p.seed, {seed_label::kDks, kRowHash});
    SeedStream ss(p.seed, {seed_label::kDks, kSignHash});
    h_ = std::make_unique<KWiseHash>(sample_kwise_hash(hs, 2 * p.ell, f));
    sigma_ = std::make_unique<KWiseHash>(sample_kwise_hash(ss, 2 * p.ell, f));
    seed_bits_ = hs.bits_consumed() + ss.bits_consumed();
  }

  void column(std::uint64_t i, std::vector<Entry>& out) override {
    const std::size_t n = s();
    const auto h = rows_.run(*h_, i, n);
    const auto g = signs_.run(*sigma_, i, n);
    out.clear();
    for (std::size_t j = 0; j < n; ++j) {
      const std::uint64_t row = h[j] & (k() - 1);
      const double v = (g[j] & 1) ? -inv_ : inv_;
      auto it = std::find_if(out.begin(), out.end(), [&](const Entry& e) { return e.row == row; });
      if (it == out.end()) {
        out.push_back({row, v});
      } else {
        it->value += v;
      }
    }
    std::erase_if(out, [](const Entry& e) { return e.value == 0.0; });
  }

 private:
  double inv_;
  PointHasher rows_;
  PointHasher signs_;
  std::unique_ptr<KWiseHash> h_;
  std::unique_ptr<KWiseHash> sigma_;
};

class DenseSampler final : public ColumnSampler {
 public:
  explicit DenseSampler(const JlParams& p)
      : ColumnSampler(ConstructionTag::kDense, p.k, p.d, p.k, p.seed),
        inv_(1.0 / std::sqrt(static_cast<double>(p.k))),
        signs_(log2_exact(next_pow2(p.k)), p.k) {
    const FieldSpec f = field_for(checked_product(p.d, next_pow2(p.k)), p.k);
    w_ = f.w();
    SeedStream ss(p.seed, {seed_label::kDense, kSignHash});
    sigma_ = std::make_unique<KWiseHash>(sample_kwise_hash(ss, 2 * p.ell, f));
    seed_bits_ = ss.bits_consumed();
  }

  void column(std::uint64_t i, std::vector<Entry>& out) override {
    const std::size_t n = k();
    const auto g = signs_.run(*sigma_, i, n);
    out.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
      out[r].row = r;
      out[r].value = (g[r] & 1) ? -inv_ : inv_;
    }
  }

 private:
  double inv_;
  PointHasher signs_;
  std::unique_ptr<KWiseHash> sigma_;
};

class CodeSampler final : public ColumnSampler {
 public:
  CodeSampler(std::shared_ptr<const CodeSpec> code, const JlParams& p, std::uint64_t seed)
      : ColumnSampler(code->kind == CodeKind::kQary ? ConstructionTag::kCodeBlock
                                                    : ConstructionTag::kCodeGraph,
                      p.k, p.d, code->sparsity(), seed),
        code_(std::move(code)),
        inv_(1.0 / std::sqrt(static_cast<double>(s()))),
        signs_(log2_exact(next_pow2(s())), s()) {
    code_->validate();
    if (code_->size() < p.d) {
      throw std::invalid_argument("code has " + std::to_string(code_->size()) +
                                  " codewords but d = " + std::to_string(p.d));
    }
    if (code_->sparsity() != p.s) throw std::invalid_argument("code sparsity must equal s");
    if (code_->kind == CodeKind::kQary) {
      if (p.k % code_->length != 0 || p.k / code_->length != code_->q) {
        throw std::invalid_argument("q-ary code needs q = k / s and length s");
      }
    } else if (code_->length != p.k) {
      throw std::invalid_argument("binary code length must equal k");
    }
    const FieldSpec f = field_for(checked_product(p.d, next_pow2(s())), p.k);
    w_ = f.w();
    SeedStream ss(seed, {seed_label::kCode, kSignHash});
    sigma_ = std::make_unique<KWiseHash>(sample_kwise_hash(ss, 2 * p.ell, f));
    seed_bits_ = ss.bits_consumed();
  }

  void column(std::uint64_t i, std::vector<Entry>& out) override {
    const std::size_t n = s();
    const auto g = signs_.run(*sigma_, i, n);
    const auto& word = code_->words[i];
    const bool qary = code_->kind == CodeKind::kQary;
    out.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      out[j].row = qary ? j * code_->q + word[j] : word[j];
      out[j].value = (g[j] & 1) ? -inv_ : inv_;
    }
  }

 private:
  std::shared_ptr<const CodeSpec> code_;
  double inv_;
  PointHasher signs_;
  std::unique_ptr<KWiseHash> sigma_;
};

}  // namespace

SparseSketch ColumnSampler::materialize() {
  SparseSketch out;
  out.tag = tag_;
  out.k = k_;
  out.d = d_;
  out.s = s_;
  out.seed = seed_;
  out.col_ptr.reserve(d_ + 1);
  out.col_ptr.push_back(0);
  std::vector<Entry> col;
  for (std::uint64_t i = 0; i < d_; ++i) {
    column(i, col);
    out.entries.insert(out.entries.end(), col.begin(), col.end());
    out.col_ptr.push_back(out.entries.size());
  }
  return out;
}

std::unique_ptr<ColumnSampler> make_sampler(const Construction& c, const JlParams& params) {
  params.validate();
  switch (c.tag) {
    case ConstructionTag::kBlock:
      return std::make_unique<BlockSampler>(params);
    case ConstructionTag::kGraph:
      return std::make_unique<GraphSampler>(params);
    case ConstructionTag::kDks:
      return std::make_unique<DksSampler>(params);
    case ConstructionTag::kDense:
      return std::make_unique<DenseSampler>(params);
    case ConstructionTag::kCodeBlock:
    case ConstructionTag::kCodeGraph: {
      if (!c.code) throw std::invalid_argument("code-driven construction needs a code");
      const CodeKind want =
          c.tag == ConstructionTag::kCodeBlock ? CodeKind::kQary : CodeKind::kBinaryWeight;
      if (c.code->kind != want) throw std::invalid_argument("code kind does not match construction");
      return std::make_unique<CodeSampler>(c.code, params, params.seed);
    }
  }
  throw std::invalid_argument("unknown construction");
}

SparseSketch sample_block(const JlParams& params) { return BlockSampler(params).materialize(); }
SparseSketch sample_graph(const JlParams& params) { return GraphSampler(params).materialize(); }
SparseSketch sample_dks(const JlParams& params) { return DksSampler(params).materialize(); }
SparseSketch sample_dense(const JlParams& params) { return DenseSampler(params).materialize(); }

SparseSketch sketch_from_code(const CodeSpec& code, const JlParams& params, std::uint64_t seed) {
  return CodeSampler(std::make_shared<const CodeSpec>(code), params, seed).materialize();
}

SparseSketch sample(const Construction& construction, const JlParams& params) {
  return make_sampler(construction, params)->materialize();
}

}  // namespace sjlt
