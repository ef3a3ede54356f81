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

#include "sjlt/codes.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "sjlt/gf2w.hpp"
#include "sjlt/kwise.hpp"
#include "sjlt/seed.hpp"

namespace sjlt {
namespace {

std::uint64_t power_or_max(std::uint64_t q, std::uint64_t m) {
  std::uint64_t r = 1;
  for (std::uint64_t j = 0; j < m; ++j) {
    if (r > std::numeric_limits<std::uint64_t>::max() / q) return std::numeric_limits<std::uint64_t>::max();
    r *= q;
  }
  return r;
}

std::vector<std::uint64_t> parse_row(const std::string& line, std::size_t lineno) {
  std::vector<std::uint64_t> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    if (pos == line.size()) break;
    std::uint64_t v = 0;
    const char* begin = line.data() + pos;
    const char* end = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr == begin) {
      throw std::runtime_error("code file line " + std::to_string(lineno) + ": expected a non-negative integer");
    }
    out.push_back(v);
    pos = static_cast<std::size_t>(ptr - line.data());
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    if (pos < line.size()) {
      if (line[pos] != ',') throw std::runtime_error("code file line " + std::to_string(lineno) + ": bad separator");
      ++pos;
    }
  }
  return out;
}

}  // namespace

void CodeSpec::validate() const {
  if (kind == CodeKind::kQary) {
    if (q < 1) throw std::invalid_argument("q-ary code needs q >= 1");
    if (length < 1) throw std::invalid_argument("q-ary code needs positive length");
    for (const auto& w : words) {
      if (w.size() != length) throw std::invalid_argument("codeword length differs from code length");
      for (auto sym : w) {
        if (sym >= q) throw std::invalid_argument("codeword symbol out of range [0, q)");
      }
    }
  } else {
    if (weight < 1 || weight > length) throw std::invalid_argument("binary code needs 1 <= weight <= length");
    for (const auto& w : words) {
      if (w.size() != weight) throw std::invalid_argument("codeword weight differs from code weight");
      for (std::size_t j = 0; j < w.size(); ++j) {
        if (w[j] >= length) throw std::invalid_argument("codeword support out of range");
        if (j > 0 && w[j] <= w[j - 1]) throw std::invalid_argument("codeword support must be strictly increasing");
      }
    }
  }
}

CodeSpec reed_solomon_code(std::uint64_t q, std::uint64_t s, std::uint64_t m,
                           std::optional<std::uint64_t> count) {
  if (q < 2 || q > (1u << 16) || !std::has_single_bit(q)) {
    throw std::invalid_argument("Reed-Solomon alphabet must be a power of two in [2, 2^16]");
  }
  if (m < 1 || m > s || s > q) throw std::invalid_argument("Reed-Solomon code needs 1 <= m <= s <= q");
  const std::uint64_t total = power_or_max(q, m);
  const std::uint64_t n = count.value_or(total);
  if (n > total) throw std::invalid_argument("more codewords requested than q^m");
  if (n > (std::uint64_t{1} << 28)) throw std::invalid_argument("Reed-Solomon code too large to materialize");
  const FieldSpec& f = default_field(static_cast<unsigned>(std::countr_zero(q)));
  CodeSpec code;
  code.kind = CodeKind::kQary;
  code.q = q;
  code.length = s;
  code.words.resize(n);
  std::vector<std::uint64_t> coeffs(m);
  for (std::uint64_t c = 0; c < n; ++c) {
    std::uint64_t rest = c;
    for (auto& a : coeffs) {
      a = rest % q;
      rest /= q;
    }
    auto& word = code.words[c];
    word.resize(s);
    for (std::uint64_t x = 0; x < s; ++x) {
      std::uint64_t acc = 0;
      for (std::size_t j = m; j-- > 0;) acc = f.mul_unchecked(acc, x) ^ coeffs[j];
      word[x] = acc;
    }
  }
  return code;
}

CodeSpec random_code(std::uint64_t seed, std::uint64_t d, std::uint64_t s, std::uint64_t q,
                     std::size_t t_indep) {
  if (q < 1 || !std::has_single_bit(q)) throw std::invalid_argument("random code alphabet must be a power of two");
  if (s < 1) throw std::invalid_argument("random code needs positive length");
  const std::uint64_t s_pow2 = next_pow2(s);
  const unsigned shift = log2_exact(s_pow2);
  if (d > (std::numeric_limits<std::uint64_t>::max() >> shift)) throw std::invalid_argument("random code too large");
  const FieldSpec& f = default_field(width_for(std::max(d << shift, q)));
  SeedStream stream(seed, {seed_label::kRandomCode, seed_label::kRowHash});
  const KWiseHash h = sample_kwise_hash(stream, t_indep, f);
  CodeSpec code;
  code.kind = CodeKind::kQary;
  code.q = q;
  code.length = s;
  code.words.assign(d, std::vector<std::uint64_t>(s));
  std::vector<u64> points(s);
  for (std::uint64_t i = 0; i < d; ++i) {
    for (std::uint64_t j = 0; j < s; ++j) points[j] = (i << shift) | j;
    h.eval_unchecked(points, code.words[i]);
    for (auto& sym : code.words[i]) sym &= q - 1;
  }
  return code;
}

CodeSpec random_weight_code(std::uint64_t seed, std::uint64_t d, std::uint64_t k, std::uint64_t s) {
  if (s < 1 || s > k) throw std::invalid_argument("random weight code needs 1 <= s <= k");
  CodeSpec code;
  code.kind = CodeKind::kBinaryWeight;
  code.length = k;
  code.weight = s;
  code.words.resize(d);
  DistinctRowSampler picker(k);
  for (std::uint64_t i = 0; i < d; ++i) {
    SeedStream stream(seed, {seed_label::kRandomCode, seed_label::kRows, i});
    auto& w = code.words[i];
    w.resize(s);
    picker.sample(stream, s, w);
    std::sort(w.begin(), w.end());
  }
  return code;
}

std::uint64_t hamming_distance(const CodeSpec& code, std::size_t a, std::size_t b) {
  const auto& x = code.words.at(a);
  const auto& y = code.words.at(b);
  if (code.kind == CodeKind::kQary) {
    std::uint64_t dist = 0;
    for (std::size_t j = 0; j < x.size(); ++j) dist += x[j] != y[j];
    return dist;
  }
  std::size_t i = 0;
  std::size_t j = 0;
  std::uint64_t common = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i] == y[j]) {
      ++common;
      ++i;
      ++j;
    } else if (x[i] < y[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return x.size() + y.size() - 2 * common;
}

std::uint64_t min_distance(const CodeSpec& code) {
  if (code.size() < 2) throw std::invalid_argument("min_distance needs at least two codewords");
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  for (std::size_t a = 0; a < code.size(); ++a) {
    for (std::size_t b = a + 1; b < code.size(); ++b) {
      best = std::min(best, hamming_distance(code, a, b));
      if (best == 0) return 0;
    }
  }
  return best;
}

CodeSpec degrade_code(const CodeSpec& code) {
  if (code.kind != CodeKind::kQary) throw std::invalid_argument("degrade_code needs a q-ary code");
  if (code.q < 2) throw std::invalid_argument("degrade_code needs q >= 2");
  CodeSpec out = code;
  for (auto& w : out.words) {
    if (!w.empty()) w[0] = 1;
  }
  return out;
}

bool check_code_for_params(const CodeSpec& code, const JlParams& params, double c_dist) {
  code.validate();
  const double s = static_cast<double>(params.s);
  const double slack = c_dist * s * s / static_cast<double>(params.k);
  double needed = 0.0;
  if (code.kind == CodeKind::kQary) {
    if (code.length != params.s || params.k % params.s != 0 || code.q != params.k / params.s) {
      throw std::invalid_argument("q-ary code must have length s and alphabet k / s");
    }
    needed = s - slack;
  } else {
    if (code.length != params.k || code.weight != params.s) {
      throw std::invalid_argument("binary code must have length k and weight s");
    }
    needed = 2.0 * (s - slack);
  }
  if (code.size() < params.d) throw std::invalid_argument("code has fewer than d codewords");
  if (code.size() < 2) return true;
  return static_cast<double>(min_distance(code)) >= needed - 1e-9;
}

CodeSpec read_code_csv(std::istream& in, CodeKind kind, std::optional<std::uint64_t> q) {
  std::vector<std::vector<std::uint64_t>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    rows.push_back(parse_row(line, lineno));
    if (rows.back().size() != rows.front().size()) {
      throw std::runtime_error("code file line " + std::to_string(lineno) + ": codeword length differs");
    }
  }
  if (rows.empty()) throw std::runtime_error("code file has no codewords");
  CodeSpec code;
  code.kind = kind;
  code.length = rows.front().size();
  if (kind == CodeKind::kQary) {
    std::uint64_t max_sym = 0;
    for (const auto& r : rows) max_sym = std::max(max_sym, *std::max_element(r.begin(), r.end()));
    code.q = q.value_or(std::max<std::uint64_t>(2, next_pow2(max_sym + 1)));
    code.words = std::move(rows);
  } else {
    for (const auto& r : rows) {
      std::vector<std::uint64_t> support;
      for (std::size_t j = 0; j < r.size(); ++j) {
        if (r[j] > 1) throw std::runtime_error("binary code file entries must be 0 or 1");
        if (r[j] == 1) support.push_back(j);
      }
      code.words.push_back(std::move(support));
    }
    code.weight = code.words.front().size();
  }
  try {
    code.validate();
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("code file: ") + e.what());
  }
  return code;
}

CodeSpec load_code_csv(const std::string& path, CodeKind kind, std::optional<std::uint64_t> q) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open code file '" + path + "'");
  return read_code_csv(in, kind, q);
}

void write_code_csv(std::ostream& out, const CodeSpec& code) {
  for (const auto& w : code.words) {
    if (code.kind == CodeKind::kQary) {
      for (std::size_t j = 0; j < w.size(); ++j) out << (j ? "," : "") << w[j];
    } else {
      std::vector<int> bits(code.length, 0);
      for (auto p : w) bits[p] = 1;
      for (std::size_t j = 0; j < bits.size(); ++j) out << (j ? "," : "") << bits[j];
    }
    out << '\n';
  }
}

}  // namespace sjlt
