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

#include "sjlt/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "sjlt/parallel.hpp"
#include "sjlt/seed.hpp"

namespace sjlt {
namespace {

constexpr int kMaxPowerIterations = 10000;
constexpr int kRestarts = 3;
constexpr std::size_t kSubspace = 6;

double norm_sq(std::span<const double> x) {
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return acc;
}

bool block_layout(ConstructionTag tag) {
  return tag == ConstructionTag::kBlock || tag == ConstructionTag::kCodeBlock;
}

void fill_matrix(QuadraticForm::Block& b, std::span<const double> x, const std::vector<double>& mag,
                 const std::vector<std::uint64_t>& rows) {
  const std::size_t n = b.coords.size();
  b.matrix.assign(n * n, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t c = 0; c < n; ++c) {
      if (a == c || rows[a] != rows[c]) continue;
      b.matrix[a * n + c] = x[b.coords[a]] * x[b.coords[c]] * mag[a] * mag[c];
    }
  }
}

// Eigenvalues of a small symmetric p x p matrix by cyclic Jacobi rotations.
std::vector<double> jacobi_eigenvalues(std::vector<double> h, std::size_t p) {
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    double diag = 0.0;
    for (std::size_t a = 0; a < p; ++a) {
      diag += h[a * p + a] * h[a * p + a];
      for (std::size_t c = a + 1; c < p; ++c) off += h[a * p + c] * h[a * p + c];
    }
    if (off <= 1e-30 * diag || off == 0.0) break;
    for (std::size_t a = 0; a < p; ++a) {
      for (std::size_t c = a + 1; c < p; ++c) {
        const double hac = h[a * p + c];
        if (hac == 0.0) continue;
        const double theta = (h[c * p + c] - h[a * p + a]) / (2 * hac);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double cs = 1 / std::sqrt(t * t + 1);
        const double sn = t * cs;
        for (std::size_t r = 0; r < p; ++r) {
          const double hra = h[r * p + a];
          const double hrc = h[r * p + c];
          h[r * p + a] = cs * hra - sn * hrc;
          h[r * p + c] = sn * hra + cs * hrc;
        }
        for (std::size_t r = 0; r < p; ++r) {
          const double har = h[a * p + r];
          const double hcr = h[c * p + r];
          h[a * p + r] = cs * har - sn * hcr;
          h[c * p + r] = sn * har + cs * hcr;
        }
      }
    }
  }
  std::vector<double> ev(p);
  for (std::size_t a = 0; a < p; ++a) ev[a] = h[a * p + a];
  return ev;
}

// Orthonormalizes the p columns of q (column-major, n rows) in place;
// columns that collapse are redrawn from rng.
void orthonormalize(std::vector<double>& q, std::size_t n, std::size_t p, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  for (std::size_t j = 0; j < p; ++j) {
    double* col = &q[j * n];
    for (int attempt = 0;; ++attempt) {
      const double before = std::sqrt(norm_sq({col, n}));
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t i = 0; i < j; ++i) {
          const double* other = &q[i * n];
          double dot = 0.0;
          for (std::size_t a = 0; a < n; ++a) dot += other[a] * col[a];
          for (std::size_t a = 0; a < n; ++a) col[a] -= dot * other[a];
        }
      }
      const double len = std::sqrt(norm_sq({col, n}));
      if (len > 1e-10 * before && len > 0.0) {
        for (std::size_t a = 0; a < n; ++a) col[a] /= len;
        break;
      }
      if (attempt == 8) throw std::logic_error("orthonormalize: cannot complete basis");
      for (std::size_t a = 0; a < n; ++a) col[a] = gauss(rng);
    }
  }
}

// Largest |eigenvalue| of one symmetric block by subspace power iteration
// with a Rayleigh-Ritz step, so near-equal +/- eigenvalue pairs converge.
double block_norm(const QuadraticForm::Block& b, double tol, std::uint64_t seed, std::size_t index) {
  const std::size_t n = b.size();
  if (std::all_of(b.matrix.begin(), b.matrix.end(), [](double v) { return v == 0.0; })) return 0.0;
  const std::size_t p = std::min<std::size_t>(n, kSubspace);
  double best = 0.0;
  std::vector<double> q(n * p);
  std::vector<double> z(n * p);
  std::vector<double> h(p * p);
  for (int restart = 0; restart < kRestarts; ++restart) {
    std::mt19937_64 rng(derive_seed(seed, {seed_label::kAnalysis, index, static_cast<std::uint64_t>(restart)}));
    std::normal_distribution<double> gauss;
    for (auto& e : q) e = gauss(rng);
    orthonormalize(q, n, p, rng);
    double prev = -1.0;
    double est = 0.0;
    bool converged = false;
    for (int it = 0; it < kMaxPowerIterations; ++it) {
      for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t a = 0; a < n; ++a) {
          double acc = 0.0;
          for (std::size_t c = 0; c < n; ++c) acc += b.matrix[a * n + c] * q[j * n + c];
          z[j * n + a] = acc;
        }
      }
      for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i; j < p; ++j) {
          double acc = 0.0;
          for (std::size_t a = 0; a < n; ++a) acc += q[i * n + a] * z[j * n + a];
          h[i * p + j] = acc;
        }
      }
      for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < i; ++j) h[i * p + j] = h[j * p + i];
      }
      est = 0.0;
      for (double ev : jacobi_eigenvalues(h, p)) est = std::max(est, std::abs(ev));
      best = std::max(best, est);
      if (p == n || std::abs(est - prev) <= tol * est) {
        converged = true;
        break;
      }
      prev = est;
      q.swap(z);
      orthonormalize(q, n, p, rng);
    }
    if (!converged) {
      std::ostringstream os;
      os << "power iteration did not converge in " << kMaxPowerIterations
         << " iterations; best estimate " << best;
      throw OperatorNormError(os.str(), best);
    }
  }
  return best;
}

std::uint64_t count_failures(const std::vector<std::vector<double>>& norms, std::size_t v,
                             double x_sq, double threshold, bool inclusive) {
  std::uint64_t failures = 0;
  for (const auto& row : norms) {
    const double dist = std::abs(row[v] - x_sq) / x_sq;
    failures += inclusive ? dist >= threshold : dist > threshold;
  }
  return failures;
}

FailureReport make_report(std::uint64_t trials, std::uint64_t failures, double eps,
                          ConstructionTag tag, const std::string& vector_tag) {
  FailureReport r;
  r.trials = trials;
  r.failures = failures;
  r.rate = static_cast<double>(failures) / static_cast<double>(trials);
  r.wilson_upper_95 = wilson_upper_95(failures, trials);
  r.eps_used = eps;
  r.construction_tag = std::string(to_string(tag));
  r.vector_tag = vector_tag;
  return r;
}

}  // namespace

double QuadraticForm::value() const {
  double acc = 0.0;
  for (const auto& b : blocks) {
    const std::size_t n = b.size();
    for (std::size_t a = 0; a < n; ++a) {
      double row = 0.0;
      for (std::size_t c = 0; c < n; ++c) row += b.matrix[a * n + c] * b.sigma[c];
      acc += b.sigma[a] * row;
    }
  }
  return acc;
}

double QuadraticForm::trace() const {
  double acc = 0.0;
  for (const auto& b : blocks) {
    for (std::size_t a = 0; a < b.size(); ++a) acc += b.at(a, a);
  }
  return acc;
}

QuadraticForm build_quadratic_form(const SparseSketch& sketch, std::span<const double> x) {
  if (sketch.tag == ConstructionTag::kDks) {
    throw std::invalid_argument("quadratic form is not defined for the DKS construction");
  }
  if (x.size() != sketch.d) throw std::invalid_argument("vector length does not match d");
  if (std::abs(std::sqrt(norm_sq(x)) - 1.0) > 1e-9) throw std::invalid_argument("x must be a unit vector");
  std::vector<std::uint64_t> support;
  for (std::uint64_t i = 0; i < sketch.d; ++i) {
    if (x[i] != 0.0) support.push_back(i);
  }
  QuadraticForm t;
  t.d = sketch.d;
  t.s = sketch.s;
  if (block_layout(sketch.tag)) {
    const std::uint64_t width = sketch.k / sketch.s;
    t.nominal_blocks = sketch.s;
    t.blocks.resize(sketch.s);
    std::vector<std::vector<std::uint64_t>> rows(sketch.s, std::vector<std::uint64_t>(support.size()));
    std::vector<std::vector<double>> mags(sketch.s, std::vector<double>(support.size()));
    for (auto& b : t.blocks) {
      b.coords = support;
      b.sigma.assign(support.size(), 0.0);
    }
    for (std::size_t a = 0; a < support.size(); ++a) {
      const auto col = sketch.column(support[a]);
      if (col.size() != sketch.s) throw std::invalid_argument("block sketch column without s entries");
      for (const Entry& e : col) {
        const std::uint64_t r = e.row / width;
        rows[r][a] = e.row;
        mags[r][a] = std::abs(e.value);
        t.blocks[r].sigma[a] = e.value < 0 ? -1.0 : 1.0;
      }
    }
    for (std::uint64_t r = 0; r < sketch.s; ++r) fill_matrix(t.blocks[r], x, mags[r], rows[r]);
    return t;
  }
  t.nominal_blocks = sketch.k;
  std::map<std::uint64_t, std::vector<std::pair<std::uint64_t, double>>> by_row;
  for (std::uint64_t i : support) {
    for (const Entry& e : sketch.column(i)) by_row[e.row].emplace_back(i, e.value);
  }
  for (auto& [row, members] : by_row) {
    if (members.size() < 2) continue;
    QuadraticForm::Block b;
    std::vector<double> mag;
    for (const auto& [i, v] : members) {
      b.coords.push_back(i);
      b.sigma.push_back(v < 0 ? -1.0 : 1.0);
      mag.push_back(std::abs(v));
    }
    fill_matrix(b, x, mag, std::vector<std::uint64_t>(members.size(), row));
    t.blocks.push_back(std::move(b));
  }
  return t;
}

double frobenius_norm_sq(const QuadraticForm& t) {
  double acc = 0.0;
  for (const auto& b : t.blocks) {
    for (double v : b.matrix) acc += v * v;
  }
  return acc;
}

double operator_norm(const QuadraticForm& t, double tol, std::uint64_t seed) {
  if (!(tol > 0.0)) throw std::invalid_argument("operator_norm: tol must be positive");
  double best = 0.0;
  for (std::size_t i = 0; i < t.blocks.size(); ++i) best = std::max(best, block_norm(t.blocks[i], tol, seed, i));
  return best;
}

double distortion(const SparseSketch& sketch, std::span<const double> x) {
  const double xx = norm_sq(x);
  if (xx == 0.0) throw std::invalid_argument("distortion of the zero vector is undefined");
  const auto y = sjlt::apply(sketch, x);
  return std::abs(norm_sq(y) - xx) / xx;
}

double wilson_upper_95(std::uint64_t failures, std::uint64_t trials) {
  if (trials == 0) throw std::invalid_argument("wilson_upper_95: no trials");
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(failures) / n;
  const double z2 = z * z;
  const double centre = p + z2 / (2 * n);
  const double spread = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
  return std::min(1.0, (centre + spread) / (1 + z2 / n));
}

std::vector<std::vector<double>> sample_sq_norms(const Construction& construction,
                                                 const JlParams& params,
                                                 std::span<const NamedVector> vectors,
                                                 std::uint64_t trials, std::uint64_t master_seed,
                                                 unsigned threads) {
  const std::size_t nv = vectors.size();
  std::map<std::uint64_t, std::vector<std::pair<std::size_t, double>>> coords;
  for (std::size_t v = 0; v < nv; ++v) {
    if (vectors[v].x.size() != params.d) throw std::invalid_argument("test vector length does not match d");
    for (std::uint64_t i = 0; i < params.d; ++i) {
      if (vectors[v].x[i] != 0.0) coords[i].emplace_back(v, vectors[v].x[i]);
    }
  }
  std::vector<std::vector<double>> norms(trials, std::vector<double>(nv, 0.0));
  parallel_for(trials, threads, [&](std::size_t begin, std::size_t end) {
    JlParams p = params;
    std::vector<Entry> col;
    std::vector<std::vector<double>> y(nv);
    std::vector<std::vector<std::uint64_t>> touched(nv);
    for (std::size_t t = begin; t < end; ++t) {
      p.seed = derive_seed(master_seed, {seed_label::kTrial, t});
      const auto sampler = make_sampler(construction, p);
      for (auto& acc : y) acc.assign(sampler->k(), 0.0);
      for (const auto& [i, members] : coords) {
        sampler->column(i, col);
        for (const auto& [v, xv] : members) {
          for (const Entry& e : col) {
            y[v][e.row] += xv * e.value;
            touched[v].push_back(e.row);
          }
        }
      }
      for (std::size_t v = 0; v < nv; ++v) {
        double acc = 0.0;
        for (std::uint64_t row : touched[v]) {
          acc += y[v][row] * y[v][row];
          y[v][row] = 0.0;
        }
        touched[v].clear();
        norms[t][v] = acc;
      }
    }
  });
  return norms;
}

std::vector<FailureReport> estimate_failure(const Construction& construction,
                                            const JlParams& params,
                                            std::span<const NamedVector> vectors, double eps,
                                            std::uint64_t trials, std::uint64_t master_seed,
                                            unsigned threads) {
  if (trials < 100) throw std::invalid_argument("estimate_failure needs at least 100 trials");
  for (const auto& v : vectors) {
    if (norm_sq(v.x) == 0.0) throw std::invalid_argument("test vector must be nonzero");
  }
  const auto norms = sample_sq_norms(construction, params, vectors, trials, master_seed, threads);
  std::vector<FailureReport> out;
  for (std::size_t v = 0; v < vectors.size(); ++v) {
    const auto failures = count_failures(norms, v, norm_sq(vectors[v].x), eps, false);
    out.push_back(make_report(trials, failures, eps, construction.tag, vectors[v].tag));
  }
  return out;
}

FailureReport estimate_failure(const Construction& construction, const JlParams& params,
                               std::span<const double> x, double eps, std::uint64_t trials,
                               std::uint64_t master_seed, unsigned threads) {
  const NamedVector v{"custom", std::vector<double>(x.begin(), x.end())};
  return estimate_failure(construction, params, std::span<const NamedVector>(&v, 1), eps, trials,
                          master_seed, threads)
      .front();
}

double estimate_moment(const Construction& construction, const JlParams& params,
                       std::span<const double> x, unsigned ell, std::uint64_t trials,
                       std::uint64_t master_seed, unsigned threads) {
  if (ell % 2 != 0) throw std::invalid_argument("moment order must be even");
  if (ell > 16) throw std::invalid_argument("moment order is capped at 16");
  if (trials < 1000) throw std::invalid_argument("estimate_moment needs at least 1000 trials");
  if (ell == 0) return 1.0;
  const NamedVector v{"custom", std::vector<double>(x.begin(), x.end())};
  const double xx = norm_sq(v.x);
  if (xx == 0.0) throw std::invalid_argument("test vector must be nonzero");
  const auto norms = sample_sq_norms(construction, params, std::span<const NamedVector>(&v, 1), trials,
                                     master_seed, threads);
  double acc = 0.0;
  for (const auto& row : norms) acc += std::pow(std::abs(row[0] - xx) / xx, static_cast<int>(ell));
  return acc / static_cast<double>(trials);
}

HardVectorKind parse_hard_vector(const std::string& name) {
  if (name == "spread") return HardVectorKind::kSpread;
  if (name == "two_coord") return HardVectorKind::kTwoCoord;
  if (name == "basis") return HardVectorKind::kBasis;
  throw std::invalid_argument("unknown hard vector '" + name + "'");
}

std::string to_string(HardVectorKind kind) {
  switch (kind) {
    case HardVectorKind::kSpread:
      return "spread";
    case HardVectorKind::kTwoCoord:
      return "two_coord";
    case HardVectorKind::kBasis:
      return "basis";
  }
  return "unknown";
}

std::vector<double> spread_vector(std::uint64_t t, std::uint64_t d) {
  if (t == 0 || t > d) throw std::invalid_argument("spread vector needs 1 <= t <= d");
  std::vector<double> x(d, 0.0);
  const double v = 1.0 / std::sqrt(static_cast<double>(t));
  std::fill(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(t), v);
  return x;
}

std::vector<double> hard_vector(HardVectorKind kind, std::uint64_t s, double eps, std::uint64_t d) {
  switch (kind) {
    case HardVectorKind::kSpread: {
      if (!(eps > 0.0) || s == 0) throw std::invalid_argument("spread vector needs s >= 1 and eps > 0");
      const double ratio = 1.0 / (static_cast<double>(s) * eps);
      const auto t = static_cast<std::uint64_t>(std::floor(ratio * (1.0 + 1e-12)));
      if (t == 0) throw std::invalid_argument("spread vector needs s * eps <= 1");
      return spread_vector(t, d);
    }
    case HardVectorKind::kTwoCoord:
      return spread_vector(2, d);
    case HardVectorKind::kBasis:
      return spread_vector(1, d);
  }
  throw std::invalid_argument("unknown hard vector kind");
}

LowerBoundResult lower_bound_experiment(ConstructionTag scheme, double eps, double delta,
                                        std::uint64_t s_override, std::uint64_t trials,
                                        std::uint64_t seed, const LowerBoundOptions& options) {
  if (scheme != ConstructionTag::kBlock && scheme != ConstructionTag::kGraph &&
      scheme != ConstructionTag::kDks) {
    throw std::invalid_argument("lower-bound experiments cover block, graph and dks");
  }
  if (trials < 100) throw std::invalid_argument("lower_bound_experiment needs at least 100 trials");
  LowerBoundResult out;
  out.params = derive_params(eps, delta, options.d, seed, options.c_k, options.c_s);
  if (s_override != 0) out.params = with_sparsity(out.params, s_override);
  const std::uint64_t s = out.params.s;
  const bool spread_regime = 2.0 * static_cast<double>(s) * eps <= 1.0 + 1e-12;
  if (spread_regime) {
    out.vector = HardVectorKind::kSpread;
  } else {
    out.vector = scheme == ConstructionTag::kDks ? HardVectorKind::kBasis : HardVectorKind::kTwoCoord;
  }
  NamedVector v{to_string(out.vector), hard_vector(out.vector, s, eps, options.d)};
  out.spread_t = static_cast<std::uint64_t>(std::count_if(v.x.begin(), v.x.end(), [](double e) { return e != 0.0; }));
  const double threshold = options.threshold_factor * eps;
  const Construction c{scheme, nullptr};
  const auto norms = sample_sq_norms(c, out.params, std::span<const NamedVector>(&v, 1), trials, seed,
                                     options.threads);
  const auto failures = count_failures(norms, 0, norm_sq(v.x), threshold * (1.0 - 1e-9), true);
  out.report = make_report(trials, failures, threshold, scheme, v.tag);
  return out;
}

}  // namespace sjlt
