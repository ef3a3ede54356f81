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
#include <stdexcept>
#include <string>
#include <vector>

#include "sjlt/constructions.hpp"
#include "sjlt/params.hpp"
#include "sjlt/sketch.hpp"

namespace sjlt {

/// The block-diagonal form T with ||Sx||^2 - ||x||^2 = sigma^T T sigma.
///
/// Block-layout sketches (block, code_block) give one block per row block r,
/// over every coordinate in the support of x. Row-layout sketches (graph,
/// code_graph, dense) give one block per row, over the coordinates that hit
/// it; rows hit by fewer than two coordinates are omitted since their blocks
/// vanish. Blocks are dense, so supports should stay small.
struct QuadraticForm {
  struct Block {
    std::vector<std::uint64_t> coords;  // members, ascending
    std::vector<double> matrix;         // |coords| x |coords|, row-major
    std::vector<double> sigma;          // realized sign of each member

    std::size_t size() const { return coords.size(); }
    double at(std::size_t a, std::size_t b) const { return matrix[a * coords.size() + b]; }
  };

  std::uint64_t d = 0;
  std::uint64_t s = 0;
  std::uint64_t nominal_blocks = 0;
  std::vector<Block> blocks;

  /// sigma^T T sigma with the sketch's own signs.
  double value() const;
  double trace() const;
};

/// Throws std::invalid_argument for DKS sketches or if |‖x‖ - 1| > 1e-9.
QuadraticForm build_quadratic_form(const SparseSketch& sketch, std::span<const double> x);

double frobenius_norm_sq(const QuadraticForm& t);

class OperatorNormError : public std::runtime_error {
 public:
  OperatorNormError(const std::string& what, double best) : std::runtime_error(what), best_(best) {}
  double best_estimate() const { return best_; }

 private:
  double best_;
};

/// Largest |eigenvalue| by power iteration on each block, three random
/// restarts, stopping once successive estimates agree to `tol` relative.
/// Throws OperatorNormError after 10^4 iterations without convergence.
double operator_norm(const QuadraticForm& t, double tol = 1e-9, std::uint64_t seed = 0);

/// |‖Sx‖^2 - ‖x‖^2| / ‖x‖^2.
double distortion(const SparseSketch& sketch, std::span<const double> x);

struct FailureReport {
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  double rate = 0.0;
  double wilson_upper_95 = 0.0;
  double eps_used = 0.0;
  std::string construction_tag;
  std::string vector_tag;
};

/// Upper end of the 95% Wilson score interval.
double wilson_upper_95(std::uint64_t failures, std::uint64_t trials);

struct NamedVector {
  std::string tag;
  std::vector<double> x;
};

/// ‖S_t x_v‖^2 for trial t (row) and vector v (column), where S_t is sampled
/// with seed derive_seed(master_seed, {trial label, t}). Only the columns in
/// the union of supports are generated. Independent of `threads`.
std::vector<std::vector<double>> sample_sq_norms(const Construction& construction,
                                                 const JlParams& params,
                                                 std::span<const NamedVector> vectors,
                                                 std::uint64_t trials, std::uint64_t master_seed,
                                                 unsigned threads = 1);

/// Counts trials with distortion > eps. Throws if trials < 100.
FailureReport estimate_failure(const Construction& construction, const JlParams& params,
                               std::span<const double> x, double eps, std::uint64_t trials,
                               std::uint64_t master_seed, unsigned threads = 1);

/// One report per vector; all vectors see the same sketches.
std::vector<FailureReport> estimate_failure(const Construction& construction,
                                            const JlParams& params,
                                            std::span<const NamedVector> vectors, double eps,
                                            std::uint64_t trials, std::uint64_t master_seed,
                                            unsigned threads = 1);

/// Mean of distortion^ell. ell must be even and at most 16; trials >= 1000.
double estimate_moment(const Construction& construction, const JlParams& params,
                       std::span<const double> x, unsigned ell, std::uint64_t trials,
                       std::uint64_t master_seed, unsigned threads = 1);

enum class HardVectorKind { kSpread, kTwoCoord, kBasis };

HardVectorKind parse_hard_vector(const std::string& name);
std::string to_string(HardVectorKind kind);

/// spread: t = floor(1 / (s eps)) entries 1/sqrt(t); two_coord: (1, 1, 0, ...)
/// / sqrt(2); basis: e_1.
std::vector<double> hard_vector(HardVectorKind kind, std::uint64_t s, double eps, std::uint64_t d);

/// First t coordinates set to 1/sqrt(t).
std::vector<double> spread_vector(std::uint64_t t, std::uint64_t d);

struct LowerBoundOptions {
  std::uint64_t d = 1024;
  double c_k = kDefaultCk;
  double c_s = kDefaultCs;
  /// Failure means distortion >= threshold_factor * eps (up to rounding).
  double threshold_factor = 2.0;
  unsigned threads = 1;
};

struct LowerBoundResult {
  FailureReport report;
  JlParams params;
  HardVectorKind vector = HardVectorKind::kSpread;
  std::uint64_t spread_t = 0;
};

/// Samples `scheme` (block, graph or dks) at sparsity s_override (0 keeps the
/// derived s) on the hard vector for that regime: spread when s <= 1/(2 eps),
/// otherwise two_coord for block/graph and basis for dks.
LowerBoundResult lower_bound_experiment(ConstructionTag scheme, double eps, double delta,
                                        std::uint64_t s_override, std::uint64_t trials,
                                        std::uint64_t seed, const LowerBoundOptions& options = {});

}  // namespace sjlt
