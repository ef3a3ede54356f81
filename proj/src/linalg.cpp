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

#include "sjlt/linalg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "sjlt/constructions.hpp"
#include "sjlt/report.hpp"
#include "sjlt/serialize.hpp"

namespace sjlt {
namespace {

constexpr std::uint32_t kMatrixFormatVersion = 1;
constexpr double kRankTolerance = 1e-10;

void require_same_rows(const MatrixBuffer& a, const MatrixBuffer& b, const char* what) {
  if (a.rows != b.rows) throw std::invalid_argument(std::string(what) + ": row counts differ");
}

bool parse_csv_line(const std::string& line, std::vector<double>& out) {
  out.clear();
  std::size_t pos = 0;
  while (true) {
    std::size_t end = line.find(',', pos);
    if (end == std::string::npos) end = line.size();
    std::size_t a = pos;
    std::size_t b = end;
    while (a < b && std::isspace(static_cast<unsigned char>(line[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(line[b - 1]))) --b;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(line.data() + a, line.data() + b, v);
    if (a == b || ec != std::errc() || ptr != line.data() + b) return false;
    out.push_back(v);
    if (end == line.size()) return true;
    pos = end + 1;
  }
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

MatrixBuffer MatrixBuffer::zeros(std::uint64_t rows, std::uint64_t cols) {
  return MatrixBuffer{rows, cols, std::vector<double>(rows * cols, 0.0)};
}

std::vector<double> MatrixBuffer::column(std::uint64_t c) const {
  if (c >= cols) throw std::out_of_range("column: index out of range");
  std::vector<double> out(rows);
  for (std::uint64_t r = 0; r < rows; ++r) out[r] = at(r, c);
  return out;
}

void MatrixBuffer::set_column(std::uint64_t c, std::span<const double> v) {
  if (c >= cols) throw std::out_of_range("set_column: column index out of range");
  if (v.size() != rows) throw std::invalid_argument("set_column: length does not match rows");
  for (std::uint64_t r = 0; r < rows; ++r) at(r, c) = v[r];
}

void MatrixBuffer::validate() const {
  if (rows == 0 || cols == 0) throw std::invalid_argument("matrix dimensions must be positive");
  if (data.size() != rows * cols) throw std::invalid_argument("matrix storage does not match dimensions");
  for (double v : data) {
    if (!std::isfinite(v)) throw std::invalid_argument("matrix has a non-finite entry");
  }
}

MatrixBuffer transpose_product(const MatrixBuffer& a, const MatrixBuffer& b) {
  require_same_rows(a, b, "transpose_product");
  MatrixBuffer out = MatrixBuffer::zeros(a.cols, b.cols);
  for (std::uint64_t r = 0; r < a.rows; ++r) {
    for (std::uint64_t i = 0; i < a.cols; ++i) {
      const double ari = a.at(r, i);
      if (ari == 0.0) continue;
      for (std::uint64_t j = 0; j < b.cols; ++j) out.at(i, j) += ari * b.at(r, j);
    }
  }
  return out;
}

double frobenius_norm(const MatrixBuffer& m) {
  double acc = 0.0;
  for (double v : m.data) acc += v * v;
  return std::sqrt(acc);
}

MatrixBuffer subtract(const MatrixBuffer& a, const MatrixBuffer& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("subtract: shape mismatch");
  MatrixBuffer out = a;
  for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] -= b.data[i];
  return out;
}

MatrixBuffer scaled(const MatrixBuffer& m, double factor) {
  MatrixBuffer out = m;
  for (double& v : out.data) v *= factor;
  return out;
}

MatrixBuffer sketch_columns(const SparseSketch& sketch, const MatrixBuffer& a) {
  if (a.rows != sketch.d) throw std::invalid_argument("matrix rows must equal sketch d");
  MatrixBuffer out = MatrixBuffer::zeros(sketch.k, a.cols);
  for (std::uint64_t c = 0; c < a.cols; ++c) out.set_column(c, sjlt::apply(sketch, a.column(c)));
  return out;
}

MatrixBuffer approx_matrix_product(const SparseSketch& sketch, const MatrixBuffer& a,
                                   const MatrixBuffer& b) {
  require_same_rows(a, b, "approx_matrix_product");
  return transpose_product(sketch_columns(sketch, a), sketch_columns(sketch, b));
}

std::vector<double> least_squares(const MatrixBuffer& a, std::span<const double> b) {
  const std::uint64_t m = a.rows;
  const std::uint64_t n = a.cols;
  if (b.size() != m) throw std::invalid_argument("least_squares: right-hand side length must equal rows");
  if (m < n) throw RankDeficientError("least_squares: fewer rows than columns");
  // Column-major working copy.
  std::vector<double> r(m * n);
  double scale = 0.0;
  for (std::uint64_t c = 0; c < n; ++c) {
    double norm = 0.0;
    for (std::uint64_t i = 0; i < m; ++i) {
      r[c * m + i] = a.at(i, c);
      norm += a.at(i, c) * a.at(i, c);
    }
    scale = std::max(scale, std::sqrt(norm));
  }
  std::vector<double> y(b.begin(), b.end());
  std::vector<double> v(m);
  for (std::uint64_t j = 0; j < n; ++j) {
    double* col = &r[j * m];
    double norm = 0.0;
    for (std::uint64_t i = j; i < m; ++i) norm += col[i] * col[i];
    norm = std::sqrt(norm);
    if (!(norm > kRankTolerance * scale)) {
      throw RankDeficientError("least_squares: matrix is rank deficient at column " + std::to_string(j));
    }
    const double alpha = col[j] > 0 ? -norm : norm;
    double vnorm_sq = 0.0;
    for (std::uint64_t i = j; i < m; ++i) {
      v[i] = col[i] - (i == j ? alpha : 0.0);
      vnorm_sq += v[i] * v[i];
    }
    auto reflect = [&](double* target) {
      double dot = 0.0;
      for (std::uint64_t i = j; i < m; ++i) dot += v[i] * target[i];
      const double f = 2.0 * dot / vnorm_sq;
      for (std::uint64_t i = j; i < m; ++i) target[i] -= f * v[i];
    };
    for (std::uint64_t c = j + 1; c < n; ++c) reflect(&r[c * m]);
    reflect(y.data());
    col[j] = alpha;
  }
  std::vector<double> x(n);
  for (std::uint64_t j = n; j-- > 0;) {
    double acc = y[j];
    for (std::uint64_t c = j + 1; c < n; ++c) acc -= r[c * m + j] * x[c];
    x[j] = acc / r[j * m + j];
  }
  return x;
}

RegressionState regression_init(const JlParams& params, std::uint64_t n, ConstructionTag tag) {
  if (n == 0) throw std::invalid_argument("regression needs at least one column");
  RegressionState st;
  st.sketch = sample(Construction{tag, nullptr}, params);
  st.n = n;
  st.sa = MatrixBuffer::zeros(st.sketch.k, n);
  st.sb.assign(st.sketch.k, 0.0);
  return st;
}

void regression_update(RegressionState& st, RegressionTarget target, std::uint64_t i,
                       std::uint64_t j, double v) {
  if (i >= st.d()) throw std::out_of_range("regression_update: row index out of range");
  if (target == RegressionTarget::kA && j >= st.n) throw std::out_of_range("regression_update: column index out of range");
  if (!std::isfinite(v)) throw std::invalid_argument("regression_update: non-finite increment");
  if (v == 0.0) return;
  if (target == RegressionTarget::kB) {
    apply_update(st.sketch, st.sb, TurnstileUpdate{i, v});
    return;
  }
  for (const Entry& e : st.sketch.column(i)) st.sa.at(e.row, j) += v * e.value;
}

std::vector<double> regression_solve(const RegressionState& st) { return least_squares(st.sa, st.sb); }

double residual_norm(const MatrixBuffer& a, std::span<const double> x, std::span<const double> b) {
  if (x.size() != a.cols || b.size() != a.rows) throw std::invalid_argument("residual_norm: shape mismatch");
  double acc = 0.0;
  for (std::uint64_t r = 0; r < a.rows; ++r) {
    double dot = -b[r];
    for (std::uint64_t c = 0; c < a.cols; ++c) dot += a.at(r, c) * x[c];
    acc += dot * dot;
  }
  return std::sqrt(acc);
}

std::vector<Requirement> regression_requirements(double eps, double delta, unsigned r,
                                                 std::optional<double> delta_prime) {
  if (r == 0) throw std::invalid_argument("regression_requirements: r must be positive");
  const double dp = delta_prime.value_or(std::max(std::pow(delta, static_cast<double>(r)), std::ldexp(1.0, -60)));
  return {Requirement{0.499, dp}, Requirement{std::sqrt(eps / r), delta}};
}

LowRankSketch low_rank_init(const SparseSketch& sketch) {
  LowRankSketch st;
  st.sketch = sketch;
  st.sa = MatrixBuffer{sketch.k, 0, {}};
  st.saat = MatrixBuffer::zeros(sketch.k, sketch.d);
  return st;
}

void low_rank_add_column(LowRankSketch& st, std::span<const double> c) {
  const auto sc = sjlt::apply(st.sketch, c);
  MatrixBuffer grown = MatrixBuffer::zeros(st.sa.rows, st.sa.cols + 1);
  for (std::uint64_t r = 0; r < st.sa.rows; ++r) {
    for (std::uint64_t j = 0; j < st.sa.cols; ++j) grown.at(r, j) = st.sa.at(r, j);
    grown.at(r, st.sa.cols) = sc[r];
  }
  st.sa = std::move(grown);
  for (std::uint64_t r = 0; r < st.saat.rows; ++r) {
    if (sc[r] == 0.0) continue;
    for (std::uint64_t i = 0; i < st.saat.cols; ++i) st.saat.at(r, i) += sc[r] * c[i];
  }
}

MatrixBuffer read_matrix_csv(std::istream& in) {
  MatrixBuffer m;
  std::string line;
  std::vector<double> row;
  std::size_t lineno = 0;
  bool seen_data = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!parse_csv_line(line, row)) {
      if (!seen_data && lineno == 1) continue;
      throw std::runtime_error("matrix CSV line " + std::to_string(lineno) + ": expected numbers");
    }
    if (!seen_data) {
      m.cols = row.size();
      seen_data = true;
    } else if (row.size() != m.cols) {
      throw std::runtime_error("matrix CSV line " + std::to_string(lineno) + ": ragged row");
    }
    m.data.insert(m.data.end(), row.begin(), row.end());
    ++m.rows;
  }
  if (!seen_data) throw std::runtime_error("matrix CSV has no data rows");
  try {
    m.validate();
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(e.what());
  }
  return m;
}

void write_matrix_csv(std::ostream& out, const MatrixBuffer& m) {
  for (std::uint64_t r = 0; r < m.rows; ++r) {
    for (std::uint64_t c = 0; c < m.cols; ++c) out << (c ? "," : "") << format_double(m.at(r, c));
    out << '\n';
  }
}

std::vector<std::uint8_t> encode_matrix(const MatrixBuffer& m) {
  m.validate();
  std::vector<std::uint8_t> out;
  out.reserve(24 + 8 * m.data.size());
  for (char c : {'S', 'J', 'L', 'M'}) out.push_back(static_cast<std::uint8_t>(c));
  wire::put_u32(out, kMatrixFormatVersion);
  wire::put_u64(out, m.rows);
  wire::put_u64(out, m.cols);
  for (double v : m.data) wire::put_f64(out, v);
  return out;
}

MatrixBuffer decode_matrix(const std::vector<std::uint8_t>& bytes) {
  wire::Reader r(bytes);
  r.expect_magic("SJLM");
  const std::uint32_t version = r.u32();
  if (version != kMatrixFormatVersion) throw std::runtime_error("unsupported matrix version " + std::to_string(version));
  MatrixBuffer m;
  m.rows = r.u64();
  m.cols = r.u64();
  if (m.rows == 0 || m.cols == 0 || m.cols > r.remaining() / 8 / m.rows) {
    throw std::runtime_error("matrix dimensions do not match data");
  }
  m.data.resize(m.rows * m.cols);
  for (double& v : m.data) v = r.f64();
  if (r.remaining() != 0) throw std::runtime_error("trailing bytes after matrix");
  try {
    m.validate();
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(e.what());
  }
  return m;
}

MatrixBuffer load_matrix(const std::string& path) {
  if (ends_with(path, ".csv")) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return read_matrix_csv(in);
  }
  return decode_matrix(wire::read_file(path));
}

void save_matrix(const std::string& path, const MatrixBuffer& m) {
  if (ends_with(path, ".csv")) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    write_matrix_csv(out, m);
    return;
  }
  wire::write_file(path, encode_matrix(m));
}

}  // namespace sjlt
