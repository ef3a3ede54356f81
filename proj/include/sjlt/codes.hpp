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
#include <string>
#include <vector>

#include "sjlt/params.hpp"

namespace sjlt {

enum class CodeKind : std::uint8_t { kQary, kBinaryWeight };

/// A q-ary code of block length `length`, or a constant-weight binary code of
/// length `length` and weight `weight`. Binary codewords are stored as their
/// sorted supports.
struct CodeSpec {
  CodeKind kind = CodeKind::kQary;
  std::uint64_t q = 0;
  std::uint64_t length = 0;
  std::uint64_t weight = 0;
  std::vector<std::vector<std::uint64_t>> words;

  std::size_t size() const { return words.size(); }
  /// Column sparsity of the sketch this code drives.
  std::uint64_t sparsity() const { return kind == CodeKind::kQary ? length : weight; }
  /// Throws std::invalid_argument on the first shape violation.
  void validate() const;

  friend bool operator==(const CodeSpec&, const CodeSpec&) = default;
};

/// Evaluations of polynomials of degree < m over GF(q) at the first s field
/// elements. Codeword c encodes the polynomial whose coefficients are the
/// base-q digits of c (constant term first). `count` defaults to q^m.
CodeSpec reed_solomon_code(std::uint64_t q, std::uint64_t s, std::uint64_t m,
                           std::optional<std::uint64_t> count = std::nullopt);

/// Symbol j of codeword i is a t_indep-wise hash of (i, j) reduced to [q].
CodeSpec random_code(std::uint64_t seed, std::uint64_t d, std::uint64_t s, std::uint64_t q,
                     std::size_t t_indep);

/// Binary code of length k whose codewords are uniformly random s-subsets.
CodeSpec random_weight_code(std::uint64_t seed, std::uint64_t d, std::uint64_t k,
                            std::uint64_t s);

std::uint64_t hamming_distance(const CodeSpec& code, std::size_t a, std::size_t b);

/// Exact minimum pairwise distance (brute force).
std::uint64_t min_distance(const CodeSpec& code);

/// Sets the first symbol of every codeword to 1.
CodeSpec degrade_code(const CodeSpec& code);

/// q-ary: d_min >= s - c_dist s^2 / k. Binary: d_min >= 2 (s - c_dist s^2 / k),
/// that is, no two supports share more than c_dist s^2 / k positions.
bool check_code_for_params(const CodeSpec& code, const JlParams& params, double c_dist = 1.0);

/// One codeword per line, symbols as decimal integers separated by commas.
/// Binary files list 0/1 entries of length k. Throws std::runtime_error on
/// malformed input.
CodeSpec read_code_csv(std::istream& in, CodeKind kind, std::optional<std::uint64_t> q = std::nullopt);
CodeSpec load_code_csv(const std::string& path, CodeKind kind,
                       std::optional<std::uint64_t> q = std::nullopt);
void write_code_csv(std::ostream& out, const CodeSpec& code);

}  // namespace sjlt
