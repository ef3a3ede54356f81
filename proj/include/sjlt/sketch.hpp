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
#include <string_view>
#include <vector>

namespace sjlt {

enum class ConstructionTag : std::uint8_t {
  kBlock = 0,
  kGraph = 1,
  kDks = 2,
  kCodeBlock = 3,
  kCodeGraph = 4,
  kDense = 5,
};

std::string_view to_string(ConstructionTag tag);
/// Accepts the names produced by to_string. Throws std::invalid_argument.
ConstructionTag parse_construction(std::string_view name);

struct Entry {
  std::uint64_t row = 0;
  double value = 0.0;

  friend bool operator==(const Entry&, const Entry&) = default;
};

/// A k x d matrix stored column-wise. Column i occupies
/// entries[col_ptr[i] .. col_ptr[i + 1]).
struct SparseSketch {
  ConstructionTag tag = ConstructionTag::kBlock;
  std::uint64_t k = 0;
  std::uint64_t d = 0;
  std::uint64_t s = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> col_ptr;
  std::vector<Entry> entries;

  std::span<const Entry> column(std::uint64_t i) const {
    return {entries.data() + col_ptr[i], entries.data() + col_ptr[i + 1]};
  }
  std::uint64_t nnz() const { return entries.size(); }

  friend bool operator==(const SparseSketch&, const SparseSketch&) = default;
};

struct TurnstileUpdate {
  std::uint64_t i = 0;
  double v = 0.0;
};

/// y = S x by column scatter, skipping zero coordinates.
std::vector<double> apply(const SparseSketch& sketch, std::span<const double> x);

/// y += u.v * S e_{u.i}. A zero increment leaves y untouched. Replaying
/// (i, x_i) for i = 0..d-1 reproduces apply(sketch, x) bit for bit.
void apply_update(const SparseSketch& sketch, std::span<double> y, const TurnstileUpdate& u);

double column_norm_sq(const SparseSketch& sketch, std::uint64_t i);

/// Checks the structural layout (col_ptr shape, rows below k).
void validate(const SparseSketch& sketch);

}  // namespace sjlt
