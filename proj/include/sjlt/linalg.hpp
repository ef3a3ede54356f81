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
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sjlt/params.hpp"
#include "sjlt/sketch.hpp"

namespace sjlt {

/// Dense row-major matrix.
struct MatrixBuffer {
  std::uint64_t rows = 0;
  std::uint64_t cols = 0;
  std::vector<double> data;

  static MatrixBuffer zeros(std::uint64_t rows, std::uint64_t cols);

  double& at(std::uint64_t r, std::uint64_t c) { return data[r * cols + c]; }
  double at(std::uint64_t r, std::uint64_t c) const { return data[r * cols + c]; }
  std::vector<double> column(std::uint64_t c) const;
  void set_column(std::uint64_t c, std::span<const double> v);

  /// Positive dimensions, matching storage, finite entries.
  void validate() const;

  friend bool operator==(const MatrixBuffer&, const MatrixBuffer&) = default;
};

/// A^T B.
MatrixBuffer transpose_product(const MatrixBuffer& a, const MatrixBuffer& b);
double frobenius_norm(const MatrixBuffer& m);
MatrixBuffer subtract(const MatrixBuffer& a, const MatrixBuffer& b);
MatrixBuffer scaled(const MatrixBuffer& m, double factor);

/// S applied to every column of A (k x cols).
MatrixBuffer sketch_columns(const SparseSketch& sketch, const MatrixBuffer& a);

/// (SA)^T (SB), an estimate of A^T B.
MatrixBuffer approx_matrix_product(const SparseSketch& sketch, const MatrixBuffer& a,
                                   const MatrixBuffer& b);

class RankDeficientError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// argmin ||A x - b|| by Householder QR. A column whose pivot falls below
/// 1e-10 times the largest column norm of A raises RankDeficientError.
std::vector<double> least_squares(const MatrixBuffer& a, std::span<const double> b);

/// Sketches SA (k x n) and Sb of a d x n system built by turnstile updates.
struct RegressionState {
  SparseSketch sketch;
  std::uint64_t n = 0;
  MatrixBuffer sa;
  std::vector<double> sb;

  std::uint64_t d() const { return sketch.d; }
  std::uint64_t k() const { return sketch.k; }
};

enum class RegressionTarget { kA, kB };

/// Zero accumulators over a sketch of `tag` (block by default).
RegressionState regression_init(const JlParams& params, std::uint64_t n,
                                ConstructionTag tag = ConstructionTag::kBlock);

/// A(i, j) += v, or b(i) += v (j ignored). Touches nnz(S e_i) accumulator
/// entries.
void regression_update(RegressionState& state, RegressionTarget target, std::uint64_t i,
                       std::uint64_t j, double v);

/// argmin ||(SA) x - Sb||.
std::vector<double> regression_solve(const RegressionState& state);

/// ||A x - b||.
double residual_norm(const MatrixBuffer& a, std::span<const double> x, std::span<const double> b);

/// The pair of targets (0.499, delta') and (sqrt(eps / r), delta) for
/// reductions that need both; delta' defaults to delta^r clipped at 2^-60.
std::vector<Requirement> regression_requirements(double eps, double delta, unsigned r,
                                                 std::optional<double> delta_prime = std::nullopt);

/// Maintains SA and S A A^T while columns c of A arrive; each arrival is the
/// rank-one update S A A^T += (S c) c^T.
struct LowRankSketch {
  SparseSketch sketch;
  MatrixBuffer sa;    // k x columns seen
  MatrixBuffer saat;  // k x d
};

LowRankSketch low_rank_init(const SparseSketch& sketch);
void low_rank_add_column(LowRankSketch& state, std::span<const double> c);

/// Dense CSV; a first line that does not parse as numbers is taken as a
/// header. Throws std::runtime_error on ragged or non-numeric rows.
MatrixBuffer read_matrix_csv(std::istream& in);
void write_matrix_csv(std::ostream& out, const MatrixBuffer& m);

/// "SJLM" | version u32 | rows u64 | cols u64 | rows * cols f64, row-major,
/// little-endian.
std::vector<std::uint8_t> encode_matrix(const MatrixBuffer& m);
MatrixBuffer decode_matrix(const std::vector<std::uint8_t>& bytes);

/// Chooses the format by extension (.csv or anything else as binary).
MatrixBuffer load_matrix(const std::string& path);
void save_matrix(const std::string& path, const MatrixBuffer& m);

}  // namespace sjlt
