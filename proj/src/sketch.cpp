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

#include "sjlt/sketch.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sjlt {
namespace {

constexpr std::array<std::string_view, 6> kNames = {"block",      "graph",      "dks",
                                                     "code_block", "code_graph", "dense"};

}  // namespace

std::string_view to_string(ConstructionTag tag) {
  const auto i = static_cast<std::size_t>(tag);
  if (i >= kNames.size()) throw std::invalid_argument("unknown construction tag");
  return kNames[i];
}

ConstructionTag parse_construction(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<ConstructionTag>(i);
  }
  throw std::invalid_argument("unknown construction '" + std::string(name) + "'");
}

std::vector<double> apply(const SparseSketch& sketch, std::span<const double> x) {
  if (x.size() != sketch.d) {
    throw std::invalid_argument("apply: vector length " + std::to_string(x.size()) +
                                " does not match d = " + std::to_string(sketch.d));
  }
  std::vector<double> y(sketch.k, 0.0);
  for (std::uint64_t i = 0; i < sketch.d; ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    if (!std::isfinite(xi)) throw std::invalid_argument("apply: non-finite input");
    for (const Entry& e : sketch.column(i)) y[e.row] += xi * e.value;
  }
  return y;
}

void apply_update(const SparseSketch& sketch, std::span<double> y, const TurnstileUpdate& u) {
  if (y.size() != sketch.k) throw std::invalid_argument("apply_update: accumulator length must be k");
  if (u.i >= sketch.d) throw std::out_of_range("apply_update: coordinate out of range");
  if (!std::isfinite(u.v)) throw std::invalid_argument("apply_update: non-finite increment");
  if (u.v == 0.0) return;
  for (const Entry& e : sketch.column(u.i)) y[e.row] += u.v * e.value;
}

double column_norm_sq(const SparseSketch& sketch, std::uint64_t i) {
  double acc = 0.0;
  for (const Entry& e : sketch.column(i)) acc += e.value * e.value;
  return acc;
}

void validate(const SparseSketch& sketch) {
  if (sketch.col_ptr.size() != sketch.d + 1) throw std::invalid_argument("sketch: col_ptr must have d + 1 entries");
  if (sketch.col_ptr.front() != 0 || sketch.col_ptr.back() != sketch.entries.size()) {
    throw std::invalid_argument("sketch: col_ptr does not span the entries");
  }
  for (std::uint64_t i = 0; i < sketch.d; ++i) {
    if (sketch.col_ptr[i] > sketch.col_ptr[i + 1]) throw std::invalid_argument("sketch: col_ptr not monotone");
  }
  for (const Entry& e : sketch.entries) {
    if (e.row >= sketch.k) throw std::invalid_argument("sketch: row index out of range");
    if (!std::isfinite(e.value)) throw std::invalid_argument("sketch: non-finite value");
  }
}

}  // namespace sjlt
