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
#include <memory>
#include <vector>

#include "sjlt/codes.hpp"
#include "sjlt/params.hpp"
#include "sjlt/sketch.hpp"

namespace sjlt {

/// Which distribution to sample. Code-driven tags need `code`.
struct Construction {
  ConstructionTag tag = ConstructionTag::kBlock;
  std::shared_ptr<const CodeSpec> code;
};

/// Produces the columns of one sketch on demand. Column i is a pure function
/// of (seed, i), so callers that only touch a few coordinates never pay for
/// the rest.
class ColumnSampler {
 public:
  virtual ~ColumnSampler() = default;

  ConstructionTag tag() const { return tag_; }
  std::uint64_t k() const { return k_; }
  std::uint64_t d() const { return d_; }
  std::uint64_t s() const { return s_; }
  std::uint64_t seed() const { return seed_; }
  /// Bits drawn for the hash functions shared by all columns.
  std::uint64_t seed_bits() const { return seed_bits_; }
  unsigned field_width() const { return w_; }

  /// Replaces `out` with the entries of column i.
  virtual void column(std::uint64_t i, std::vector<Entry>& out) = 0;

  SparseSketch materialize();

 protected:
  ColumnSampler(ConstructionTag tag, std::uint64_t k, std::uint64_t d, std::uint64_t s,
                std::uint64_t seed)
      : tag_(tag), k_(k), d_(d), s_(s), seed_(seed) {}

  std::uint64_t seed_bits_ = 0;
  unsigned w_ = 0;

 private:
  ConstructionTag tag_;
  std::uint64_t k_;
  std::uint64_t d_;
  std::uint64_t s_;
  std::uint64_t seed_;
};

/// Sampler for `construction` under params (params.seed seeds the draw).
std::unique_ptr<ColumnSampler> make_sampler(const Construction& construction,
                                            const JlParams& params);

SparseSketch sample_block(const JlParams& params);
SparseSketch sample_graph(const JlParams& params);
/// The sketch has next_pow2(params.k) rows.
SparseSketch sample_dks(const JlParams& params);
SparseSketch sample_dense(const JlParams& params);
/// q-ary codes give the block layout, binary constant-weight codes give the
/// graph layout. Signs come from a fresh hash seeded by `seed`.
SparseSketch sketch_from_code(const CodeSpec& code, const JlParams& params, std::uint64_t seed);

SparseSketch sample(const Construction& construction, const JlParams& params);

}  // namespace sjlt
