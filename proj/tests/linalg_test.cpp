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

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <sstream>

#include "sjlt/constructions.hpp"

namespace sjlt {
namespace {

MatrixBuffer random_matrix(std::mt19937_64& rng, std::uint64_t rows, std::uint64_t cols) {
  std::normal_distribution<double> g;
  MatrixBuffer m = MatrixBuffer::zeros(rows, cols);
  for (auto& v : m.data) v = g(rng);
  return m;
}

Eigen::MatrixXd to_eigen(const MatrixBuffer& m) {
  Eigen::MatrixXd e(m.rows, m.cols);
  for (std::uint64_t r = 0; r < m.rows; ++r) {
    for (std::uint64_t c = 0; c < m.cols; ++c) e(r, c) = m.at(r, c);
  }
  return e;
}

TEST(MatrixBufferTest, Basics) {
  MatrixBuffer m = MatrixBuffer::zeros(2, 3);
  m.at(1, 2) = 5;
  EXPECT_EQ(m.column(2), (std::vector<double>{0, 5}));
  m.set_column(0, std::vector<double>{1, 2});
  EXPECT_EQ(m.data, (std::vector<double>{1, 0, 0, 2, 0, 5}));
  EXPECT_THROW(m.set_column(0, std::vector<double>{1}), std::invalid_argument);
  MatrixBuffer bad{2, 2, {1, 2, 3}};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  EXPECT_DOUBLE_EQ(frobenius_norm(m), std::sqrt(30.0));
  EXPECT_EQ(subtract(m, m), MatrixBuffer::zeros(2, 3));
  EXPECT_EQ(scaled(m, 2).at(1, 2), 10);
}

TEST(MatrixProductTest, TransposeProductMatchesEigen) {
  std::mt19937_64 rng(3);
  const auto a = random_matrix(rng, 7, 3);
  const auto b = random_matrix(rng, 7, 4);
  const Eigen::MatrixXd ref = to_eigen(a).transpose() * to_eigen(b);
  const auto got = transpose_product(a, b);
  ASSERT_EQ(got.rows, 3u);
  ASSERT_EQ(got.cols, 4u);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 4; ++c) EXPECT_NEAR(got.at(r, c), ref(r, c), 1e-12);
  }
  EXPECT_THROW(transpose_product(a, random_matrix(rng, 6, 4)), std::invalid_argument);
}

TEST(MatrixProductTest, ZeroAndUnitCases) {
  const JlParams p = derive_params(0.25, 0.05, 20, 4);
  const SparseSketch s = sample_block(p);
  std::mt19937_64 rng(5);
  const auto a = random_matrix(rng, 20, 3);
  EXPECT_EQ(approx_matrix_product(s, a, MatrixBuffer::zeros(20, 2)), MatrixBuffer::zeros(3, 2));
  MatrixBuffer e1 = MatrixBuffer::zeros(20, 1);
  e1.at(0, 0) = 1;
  EXPECT_NEAR(approx_matrix_product(s, e1, e1).at(0, 0), 1.0, 1e-14);
  EXPECT_THROW(approx_matrix_product(s, random_matrix(rng, 19, 1), e1), std::invalid_argument);
}

TEST(MatrixProductTest, BilinearAndPolarization) {
  const JlParams p = derive_params(0.25, 0.05, 30, 8);
  const SparseSketch s = sample_graph(p);
  std::mt19937_64 rng(6);
  const auto a1 = random_matrix(rng, 30, 2);
  const auto a2 = random_matrix(rng, 30, 2);
  const auto b = random_matrix(rng, 30, 3);
  MatrixBuffer sum = a1;
  for (std::size_t i = 0; i < sum.data.size(); ++i) sum.data[i] = 2 * a1.data[i] - 3 * a2.data[i];
  const auto lhs = approx_matrix_product(s, sum, b);
  const auto r1 = approx_matrix_product(s, a1, b);
  const auto r2 = approx_matrix_product(s, a2, b);
  for (std::size_t i = 0; i < lhs.data.size(); ++i) {
    EXPECT_NEAR(lhs.data[i], 2 * r1.data[i] - 3 * r2.data[i], 1e-12);
  }
  // <Sx, Sy> = (||S(x+y)||^2 - ||S(x-y)||^2) / 4
  const auto x = a1.column(0);
  const auto y = b.column(1);
  std::vector<double> plus(30), minus(30);
  for (int i = 0; i < 30; ++i) {
    plus[i] = x[i] + y[i];
    minus[i] = x[i] - y[i];
  }
  auto sq = [](const std::vector<double>& v) {
    double acc = 0;
    for (double e : v) acc += e * e;
    return acc;
  };
  const double polar = (sq(sjlt::apply(s, plus)) - sq(sjlt::apply(s, minus))) / 4;
  EXPECT_NEAR(approx_matrix_product(s, a1, b).at(0, 1), polar, 1e-11);
}

TEST(MatrixProductTest, PolarizationOnRandomPairs) {
  std::mt19937_64 rng(12);
  auto sq = [](const std::vector<double>& v) {
    double acc = 0;
    for (double e : v) acc += e * e;
    return acc;
  };
  for (int inst = 0; inst < 1000; ++inst) {
    const std::uint64_t d = 2 + rng() % 40;
    const std::uint64_t sp = std::uint64_t{1} << (rng() % 4);
    const JlParams p = explicit_params(d, 64, sp, 0.25, 0.05, rng());
    const SparseSketch s = inst % 2 ? sample_block(p) : sample_graph(p);
    auto x = random_matrix(rng, d, 1).data;
    auto y = random_matrix(rng, d, 1).data;
    const double nx = std::sqrt(sq(x));
    const double ny = std::sqrt(sq(y));
    std::vector<double> diff(d);
    for (std::uint64_t i = 0; i < d; ++i) {
      x[i] /= nx;
      y[i] /= ny;
      diff[i] = x[i] - y[i];
    }
    const auto sx = sjlt::apply(s, x);
    const auto sy = sjlt::apply(s, y);
    double inner = 0.0;
    for (std::uint64_t r = 0; r < s.k; ++r) inner += sx[r] * sy[r];
    EXPECT_NEAR(inner, (sq(sx) + sq(sy) - sq(sjlt::apply(s, diff))) / 2, 1e-9);
  }
}

TEST(LeastSquaresTest, MatchesEigen) {
  std::mt19937_64 rng(7);
  for (int inst = 0; inst < 20; ++inst) {
    const std::uint64_t n = 1 + rng() % 6;
    const std::uint64_t m = n + rng() % 10;
    const auto a = random_matrix(rng, m, n);
    const auto bm = random_matrix(rng, m, 1);
    const auto x = least_squares(a, bm.data);
    const Eigen::VectorXd ref = to_eigen(a).colPivHouseholderQr().solve(to_eigen(bm));
    for (std::uint64_t j = 0; j < n; ++j) EXPECT_NEAR(x[j], ref(j), 1e-9);
  }
}

TEST(LeastSquaresTest, ConsistentAndDegenerate) {
  std::mt19937_64 rng(8);
  const auto a = random_matrix(rng, 12, 4);
  const std::vector<double> truth = {1, -2, 0.5, 3};
  std::vector<double> b(12, 0.0);
  for (int r = 0; r < 12; ++r) {
    for (int c = 0; c < 4; ++c) b[r] += a.at(r, c) * truth[c];
  }
  EXPECT_LE(residual_norm(a, least_squares(a, b), b), 1e-8);
  const auto col = random_matrix(rng, 5, 1);
  const auto one = least_squares(col, col.data);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_NEAR(one[0], 1.0, 1e-14);

  MatrixBuffer dup = MatrixBuffer::zeros(6, 2);
  for (int r = 0; r < 6; ++r) dup.at(r, 0) = dup.at(r, 1) = r + 1.0;
  EXPECT_THROW(least_squares(dup, std::vector<double>(6, 1.0)), RankDeficientError);
  EXPECT_THROW(least_squares(random_matrix(rng, 2, 3), std::vector<double>(2, 1.0)), RankDeficientError);
  EXPECT_THROW(least_squares(a, std::vector<double>(11, 1.0)), std::invalid_argument);
}

TEST(RegressionTest, UpdatesMatchBatchSketch) {
  const JlParams p = derive_params(regression_requirements(0.3, 0.1, 3), 40, 11);
  RegressionState st = regression_init(p, 3);
  EXPECT_EQ(st.sa.rows, p.k);
  EXPECT_EQ(st.sa.cols, 3u);
  std::mt19937_64 rng(9);
  const auto a = random_matrix(rng, 40, 3);
  const auto b = random_matrix(rng, 40, 1);
  for (std::uint64_t i = 0; i < 40; ++i) {
    for (std::uint64_t j = 0; j < 3; ++j) regression_update(st, RegressionTarget::kA, i, j, a.at(i, j));
    regression_update(st, RegressionTarget::kB, i, 0, b.data[i]);
  }
  const auto sa = sketch_columns(st.sketch, a);
  const auto sb = sketch_columns(st.sketch, b);
  for (std::size_t i = 0; i < sa.data.size(); ++i) EXPECT_NEAR(st.sa.data[i], sa.data[i], 1e-14);
  for (std::uint64_t r = 0; r < p.k; ++r) EXPECT_NEAR(st.sb[r], sb.data[r], 1e-14);
  const auto x = regression_solve(st);
  const auto direct = least_squares(sa, sb.data);
  for (int j = 0; j < 3; ++j) EXPECT_NEAR(x[j], direct[j], 1e-10);
}

TEST(RegressionTest, SingleUpdateTouchesColumnRows) {
  const JlParams p = derive_params(0.3, 0.1, 10, 2);
  RegressionState st = regression_init(p, 2);
  const RegressionState before = st;
  regression_update(st, RegressionTarget::kA, 4, 1, 0.0);
  EXPECT_EQ(st.sa, before.sa);
  regression_update(st, RegressionTarget::kA, 4, 1, 2.0);
  std::uint64_t changed = 0;
  for (std::uint64_t r = 0; r < p.k; ++r) {
    EXPECT_EQ(st.sa.at(r, 0), 0.0);
    changed += st.sa.at(r, 1) != 0.0;
  }
  EXPECT_EQ(changed, p.s);
  EXPECT_THROW(regression_update(st, RegressionTarget::kA, 10, 0, 1.0), std::out_of_range);
  EXPECT_THROW(regression_update(st, RegressionTarget::kA, 0, 2, 1.0), std::out_of_range);
}

TEST(RegressionTest, Requirements) {
  const auto req = regression_requirements(0.3, 0.1, 3);
  ASSERT_EQ(req.size(), 2u);
  EXPECT_DOUBLE_EQ(req[0].eps, 0.499);
  EXPECT_NEAR(req[0].delta, 1e-3, 1e-15);
  EXPECT_DOUBLE_EQ(req[1].eps, std::sqrt(0.1));
  EXPECT_DOUBLE_EQ(req[1].delta, 0.1);
  EXPECT_DOUBLE_EQ(regression_requirements(0.3, 0.1, 3, 0.2)[0].delta, 0.2);
  EXPECT_DOUBLE_EQ(regression_requirements(0.3, 0.01, 40)[0].delta, std::ldexp(1.0, -60));
  EXPECT_THROW(regression_requirements(0.3, 0.1, 0), std::invalid_argument);
}

TEST(LowRankTest, RankOneUpdates) {
  const JlParams p = derive_params(0.25, 0.05, 12, 3);
  const SparseSketch s = sample_block(p);
  LowRankSketch st = low_rank_init(s);
  std::mt19937_64 rng(10);
  const auto a = random_matrix(rng, 12, 3);
  for (int j = 0; j < 3; ++j) low_rank_add_column(st, a.column(j));
  const auto sa = sketch_columns(s, a);
  ASSERT_EQ(st.sa.cols, 3u);
  for (std::size_t i = 0; i < sa.data.size(); ++i) EXPECT_NEAR(st.sa.data[i], sa.data[i], 1e-14);
  // SAA^T = (SA) A^T
  for (std::uint64_t r = 0; r < p.k; ++r) {
    for (std::uint64_t i = 0; i < 12; ++i) {
      double ref = 0.0;
      for (int j = 0; j < 3; ++j) ref += sa.at(r, j) * a.at(i, j);
      EXPECT_NEAR(st.saat.at(r, i), ref, 1e-12);
    }
  }
}

TEST(MatrixIoTest, CsvRoundTrip) {
  std::mt19937_64 rng(11);
  const auto m = random_matrix(rng, 4, 3);
  std::stringstream ss;
  write_matrix_csv(ss, m);
  EXPECT_EQ(read_matrix_csv(ss), m);
  std::istringstream with_header("a,b\n1,2\n3,4\n");
  const auto h = read_matrix_csv(with_header);
  EXPECT_EQ(h.rows, 2u);
  EXPECT_EQ(h.at(1, 0), 3.0);
  std::istringstream ragged("1,2\n3\n");
  EXPECT_THROW(read_matrix_csv(ragged), std::runtime_error);
  std::istringstream junk("1,2\n3,x\n");
  EXPECT_THROW(read_matrix_csv(junk), std::runtime_error);
}

TEST(MatrixIoTest, BinaryRoundTripAndLayout) {
  MatrixBuffer m{1, 2, {1.0, -2.5}};
  const auto bytes = encode_matrix(m);
  ASSERT_EQ(bytes.size(), 4u + 4 + 8 + 8 + 16);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "SJLM");
  EXPECT_EQ(bytes[4], 1);
  EXPECT_EQ(bytes[8], 1);
  EXPECT_EQ(bytes[16], 2);
  EXPECT_EQ(bytes[24 + 7], 0x3F);  // 1.0 little-endian
  EXPECT_EQ(decode_matrix(bytes), m);
  auto bad = bytes;
  bad[0] = 'X';
  EXPECT_THROW(decode_matrix(bad), std::runtime_error);
  auto truncated = bytes;
  truncated.pop_back();
  EXPECT_THROW(decode_matrix(truncated), std::runtime_error);
  auto trailing = bytes;
  trailing.push_back(0);
  EXPECT_THROW(decode_matrix(trailing), std::runtime_error);
}

}  // namespace
}  // namespace sjlt
