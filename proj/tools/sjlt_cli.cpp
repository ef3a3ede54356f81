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

// sjlt command-line front end.

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sjlt/analysis.hpp"
#include "sjlt/codes.hpp"
#include "sjlt/constructions.hpp"
#include "sjlt/linalg.hpp"
#include "sjlt/params.hpp"
#include "sjlt/report.hpp"
#include "sjlt/serialize.hpp"

namespace {

using namespace sjlt;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitStatistical = 3;
constexpr std::uint64_t kDefaultD = 1024;

constexpr const char* kCsvColumns =
    "Failure CSV columns: scheme,d,k,s,eps,delta,vector,trials,failures,rate,wilson_upper_95,eps_used,verdict";

struct RunConfig {
  std::optional<std::uint64_t> d;
  std::vector<double> eps = {0.25};
  std::vector<double> delta = {0.05};
  std::vector<std::uint64_t> s;
  std::optional<std::uint64_t> k;
  double c_k = kDefaultCk;
  double c_s = kDefaultCs;
  std::uint64_t seed = 0;
  std::uint64_t trials = 1000;
  std::string construction = "block";
  std::string code_file;
  std::string code_kind = "qary";
  std::vector<std::string> in;
  std::string out;
  std::string format = "csv";
  unsigned threads = 1;
  bool reproducible = false;
  bool lower_bound = false;
};

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Emitter {
  std::ofstream file;
  std::ostream* os = &std::cout;

  explicit Emitter(const std::string& path) {
    if (path.empty()) return;
    file.open(path, std::ios::binary);
    if (!file) throw UsageError("cannot open output '" + path + "'");
    os = &file;
  }
};

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

void emit_json(const RunConfig& cfg, json j, const std::string& path) {
  if (!cfg.reproducible) j["timestamp"] = utc_timestamp();
  Emitter e(path);
  *e.os << j.dump(2) << '\n';
}

double scalar(const std::vector<double>& v, const char* name) {
  if (v.size() != 1) throw UsageError(std::string("--") + name + " takes a single value for this command");
  return v.front();
}

CodeKind code_kind(const RunConfig& cfg) {
  if (cfg.code_kind == "qary") return CodeKind::kQary;
  if (cfg.code_kind == "binary") return CodeKind::kBinaryWeight;
  throw UsageError("--code-kind must be qary or binary");
}

std::shared_ptr<const CodeSpec> load_code(const RunConfig& cfg) {
  if (cfg.code_file.empty()) throw UsageError("--code-file is required for the code construction");
  const CodeKind kind = code_kind(cfg);
  std::optional<std::uint64_t> q;
  if (kind == CodeKind::kQary && cfg.k) {
    std::ifstream probe(cfg.code_file);
    CodeSpec c = read_code_csv(probe, kind);
    if (*cfg.k % c.length != 0) throw UsageError("--k must be a multiple of the code length");
    q = *cfg.k / c.length;
  }
  return std::make_shared<const CodeSpec>(load_code_csv(cfg.code_file, kind, q));
}

// Sizing from (eps, delta) with optional --s and --k overrides. A requested
// k is rounded up so that s | k and k / s is a power of two.
JlParams resolve_params(const RunConfig& cfg, double eps, double delta, std::optional<std::uint64_t> s,
                        const CodeSpec* code) {
  if (code != nullptr) {
    const std::uint64_t cs = code->sparsity();
    const std::uint64_t ck = code->kind == CodeKind::kQary ? code->length * code->q : code->length;
    const std::uint64_t d = cfg.d.value_or(code->size());
    return explicit_params(d, ck, cs, eps, delta, cfg.seed);
  }
  JlParams p = derive_params(eps, delta, cfg.d.value_or(kDefaultD), cfg.seed, cfg.c_k, cfg.c_s);
  if (cfg.k) {
    if (*cfg.k == 0) throw UsageError("--k must be positive");
    p.k_min = *cfg.k;
    p = with_sparsity(p, s.value_or(std::min(p.s, *cfg.k)));
  } else if (s) {
    p = with_sparsity(p, *s);
  }
  p.validate();
  return p;
}

Construction resolve_construction(const RunConfig& cfg, std::shared_ptr<const CodeSpec>& code) {
  if (cfg.construction == "code") {
    code = load_code(cfg);
    return {code->kind == CodeKind::kQary ? ConstructionTag::kCodeBlock : ConstructionTag::kCodeGraph, code};
  }
  return {parse_construction(cfg.construction), nullptr};
}

std::vector<double> read_vector(const std::string& path, std::uint64_t d) {
  const MatrixBuffer m = load_matrix(path);
  if (m.rows != 1 && m.cols != 1) throw UsageError("input vector must be a single row or column");
  if (m.data.size() != d) {
    throw UsageError("input vector has " + std::to_string(m.data.size()) + " entries, expected d=" +
                     std::to_string(d));
  }
  return m.data;
}

std::vector<NamedVector> default_vectors(const JlParams& p) {
  std::vector<NamedVector> out;
  out.push_back({"uniform", std::vector<double>(p.d, 1.0 / std::sqrt(static_cast<double>(p.d)))});
  out.push_back({"e1", hard_vector(HardVectorKind::kBasis, p.s, p.eps, p.d)});
  auto t = static_cast<std::uint64_t>(std::floor(1.0 / (static_cast<double>(p.s) * p.eps) * (1 + 1e-12)));
  if (t == 0) t = p.ell / 2;
  out.push_back({"spread", spread_vector(std::min(t, p.d), p.d)});
  if (p.d >= 2) out.push_back({"two_coord", hard_vector(HardVectorKind::kTwoCoord, p.s, p.eps, p.d)});
  return out;
}

std::vector<NamedVector> bench_vectors(const RunConfig& cfg, const JlParams& p) {
  if (cfg.in.empty()) return default_vectors(p);
  std::vector<NamedVector> out;
  for (const auto& path : cfg.in) out.push_back({path, read_vector(path, p.d)});
  return out;
}

json params_json(const JlParams& p, ConstructionTag tag) {
  json j = p;
  j["construction"] = std::string(to_string(tag));
  return j;
}

int cmd_gen(const RunConfig& cfg) {
  if (cfg.out.empty()) throw UsageError("gen needs --out for the sketch file");
  std::shared_ptr<const CodeSpec> code;
  const Construction c = resolve_construction(cfg, code);
  const JlParams p = resolve_params(cfg, scalar(cfg.eps, "eps"), scalar(cfg.delta, "delta"),
                                    cfg.s.empty() ? std::nullopt : std::optional(cfg.s.front()), code.get());
  const auto sampler = make_sampler(c, p);
  const SparseSketch sk = sampler->materialize();
  save_sketch(cfg.out, sk);
  json j;
  j["construction"] = std::string(to_string(sk.tag));
  j["d"] = sk.d;
  j["k"] = sk.k;
  j["k_requested"] = cfg.k ? *cfg.k : p.k;
  j["s"] = sk.s;
  j["nnz"] = sk.nnz();
  j["seed"] = sk.seed;
  j["seed_bits"] = sampler->seed_bits();
  j["field_width"] = sampler->field_width();
  if (cfg.format == "json") {
    emit_json(cfg, j, "");
  } else {
    std::cout << "construction,d,k,k_requested,s,nnz,seed,seed_bits,field_width\n"
              << j["construction"].get<std::string>() << ',' << sk.d << ',' << sk.k << ','
              << j["k_requested"].get<std::uint64_t>() << ',' << sk.s << ',' << sk.nnz() << ',' << sk.seed << ','
              << sampler->seed_bits() << ',' << sampler->field_width() << '\n';
  }
  return kExitOk;
}

int cmd_apply(const RunConfig& cfg, const std::string& sketch_path) {
  SparseSketch sk;
  if (!sketch_path.empty()) {
    sk = load_sketch(sketch_path);
  } else {
    std::shared_ptr<const CodeSpec> code;
    const Construction c = resolve_construction(cfg, code);
    sk = sample(c, resolve_params(cfg, scalar(cfg.eps, "eps"), scalar(cfg.delta, "delta"),
                                  cfg.s.empty() ? std::nullopt : std::optional(cfg.s.front()), code.get()));
  }
  if (cfg.in.size() != 1) throw UsageError("apply needs exactly one --in vector");
  const auto y = sjlt::apply(sk, read_vector(cfg.in.front(), sk.d));
  if (cfg.format == "json") {
    emit_json(cfg, json{{"k", sk.k}, {"y", y}}, cfg.out);
  } else {
    Emitter e(cfg.out);
    for (double v : y) *e.os << format_double(v) << '\n';
  }
  return kExitOk;
}

int cmd_bench_distortion(const RunConfig& cfg) {
  std::shared_ptr<const CodeSpec> code;
  const Construction c = resolve_construction(cfg, code);
  const JlParams p = resolve_params(cfg, scalar(cfg.eps, "eps"), scalar(cfg.delta, "delta"),
                                    cfg.s.empty() ? std::nullopt : std::optional(cfg.s.front()), code.get());
  const auto vectors = bench_vectors(cfg, p);
  const auto norms = sample_sq_norms(c, p, vectors, cfg.trials, cfg.seed, cfg.threads);
  const auto sampler = make_sampler(c, p);
  json rows = json::array();
  for (std::size_t v = 0; v < vectors.size(); ++v) {
    double xx = 0.0;
    for (double e : vectors[v].x) xx += e * e;
    if (xx == 0.0) throw UsageError("benchmark vector '" + vectors[v].tag + "' is zero");
    std::vector<double> dist;
    double mean = 0.0;
    for (const auto& row : norms) {
      mean += row[v] / xx;
      dist.push_back(std::abs(row[v] - xx) / xx);
    }
    mean /= static_cast<double>(norms.size());
    std::sort(dist.begin(), dist.end());
    const double q95 = dist[std::min(dist.size() - 1, static_cast<std::size_t>(0.95 * dist.size()))];
    double mean_dist = 0.0;
    for (double e : dist) mean_dist += e;
    mean_dist /= static_cast<double>(dist.size());
    rows.push_back({{"scheme", std::string(to_string(c.tag))},
                    {"d", p.d},
                    {"k", sampler->k()},
                    {"s", sampler->s()},
                    {"eps", p.eps},
                    {"delta", p.delta},
                    {"vector", vectors[v].tag},
                    {"trials", cfg.trials},
                    {"mean_sq_norm_ratio", mean},
                    {"mean_distortion", mean_dist},
                    {"p95_distortion", q95},
                    {"max_distortion", dist.back()}});
  }
  if (cfg.format == "json") {
    emit_json(cfg, json{{"rows", rows}}, cfg.out);
  } else {
    Emitter e(cfg.out);
    *e.os << "scheme,d,k,s,eps,delta,vector,trials,mean_sq_norm_ratio,mean_distortion,p95_distortion,max_distortion\n";
    for (const auto& r : rows) {
      *e.os << r["scheme"].get<std::string>() << ',' << r["d"].get<std::uint64_t>() << ','
            << r["k"].get<std::uint64_t>() << ',' << r["s"].get<std::uint64_t>() << ','
            << format_double(r["eps"]) << ',' << format_double(r["delta"]) << ','
            << r["vector"].get<std::string>() << ',' << cfg.trials << ',' << format_double(r["mean_sq_norm_ratio"])
            << ',' << format_double(r["mean_distortion"]) << ',' << format_double(r["p95_distortion"]) << ','
            << format_double(r["max_distortion"]) << '\n';
    }
  }
  return kExitOk;
}

void emit_grid(const RunConfig& cfg, const std::vector<GridRow>& rows) {
  if (cfg.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      json j = r.report;
      j["scheme"] = r.scheme;
      j["d"] = r.d;
      j["k"] = r.k;
      j["s"] = r.s;
      j["eps"] = r.eps;
      j["delta"] = r.delta;
      j["verdict"] = r.verdict;
      arr.push_back(std::move(j));
    }
    emit_json(cfg, json{{"rows", arr}}, cfg.out);
    return;
  }
  Emitter e(cfg.out);
  *e.os << csv_header() << '\n';
  for (const auto& r : rows) *e.os << csv_row(r) << '\n';
}

std::string lower_bound_verdict(ConstructionTag tag, double rate, double delta) {
  const double bar = tag == ConstructionTag::kDks ? 2 * delta : delta;
  return rate >= bar && rate > delta ? "FAIL-AS-EXPECTED" : "NOT-REPRODUCED";
}

// One row per (eps, delta, s) cell, with all contract vectors or the
// lower-bound hard vector.
int cmd_bench_failure(const RunConfig& cfg, bool lower_bound) {
  if (cfg.trials < 100) throw UsageError("--trials must be at least 100");
  std::vector<std::optional<std::uint64_t>> sparsities;
  for (auto s : cfg.s) sparsities.emplace_back(s);
  if (sparsities.empty()) sparsities.emplace_back(std::nullopt);
  std::vector<GridRow> rows;
  bool ok = true;
  for (double eps : cfg.eps) {
    for (double delta : cfg.delta) {
      for (const auto& s : sparsities) {
        if (lower_bound) {
          const ConstructionTag tag = parse_construction(cfg.construction);
          LowerBoundOptions opt;
          opt.d = cfg.d.value_or(kDefaultD);
          opt.c_k = cfg.c_k;
          opt.c_s = cfg.c_s;
          opt.threads = cfg.threads;
          const auto r = lower_bound_experiment(tag, eps, delta, s.value_or(0), cfg.trials, cfg.seed, opt);
          const auto sampler = make_sampler({tag, nullptr}, r.params);
          GridRow row{std::string(to_string(tag)), r.params.d, sampler->k(), sampler->s(), eps, delta, r.report,
                      lower_bound_verdict(tag, r.report.rate, delta)};
          ok = ok && row.verdict == "FAIL-AS-EXPECTED";
          rows.push_back(std::move(row));
          continue;
        }
        std::shared_ptr<const CodeSpec> code;
        const Construction c = resolve_construction(cfg, code);
        const JlParams p = resolve_params(cfg, eps, delta, s, code.get());
        const auto vectors = bench_vectors(cfg, p);
        const auto sampler = make_sampler(c, p);
        for (auto& report : estimate_failure(c, p, vectors, eps, cfg.trials, cfg.seed, cfg.threads)) {
          const bool pass = report.wilson_upper_95 <= delta;
          ok = ok && pass;
          rows.push_back({std::string(to_string(c.tag)), p.d, sampler->k(), sampler->s(), eps, delta, report,
                          pass ? "PASS" : "FAIL"});
        }
      }
    }
  }
  emit_grid(cfg, rows);
  return ok ? kExitOk : kExitStatistical;
}

int cmd_verify_code(const RunConfig& cfg) {
  const auto code = load_code(cfg);
  const JlParams p = resolve_params(cfg, scalar(cfg.eps, "eps"), scalar(cfg.delta, "delta"), std::nullopt, code.get());
  const std::uint64_t dmin = min_distance(*code);
  const double s = static_cast<double>(p.s);
  const double slack = s - s * s / static_cast<double>(p.k);
  const double bound = code->kind == CodeKind::kQary ? slack : 2 * slack;
  bool pass = false;
  std::string reason;
  try {
    pass = check_code_for_params(*code, p, 1.0);
  } catch (const std::invalid_argument& e) {
    reason = e.what();
  }
  json j{{"kind", cfg.code_kind}, {"codewords", code->size()}, {"length", code->length},
         {"q", code->q},          {"d", p.d},                    {"k", p.k},
         {"s", p.s},              {"d_min", dmin},               {"required_d_min", bound},
         {"verdict", pass ? "PASS" : "FAIL"}};
  if (!reason.empty()) j["reason"] = reason;
  if (cfg.format == "json") {
    emit_json(cfg, j, cfg.out);
  } else {
    Emitter e(cfg.out);
    *e.os << "kind,codewords,length,q,d,k,s,d_min,required_d_min,verdict\n"
          << cfg.code_kind << ',' << code->size() << ',' << code->length << ',' << code->q << ',' << p.d << ','
          << p.k << ',' << p.s << ',' << dmin << ',' << format_double(bound) << ',' << (pass ? "PASS" : "FAIL")
          << '\n';
  }
  return pass ? kExitOk : kExitStatistical;
}

std::pair<MatrixBuffer, MatrixBuffer> two_matrices(const RunConfig& cfg, const char* what) {
  if (cfg.in.empty() || cfg.in.size() > 2) throw UsageError(std::string(what) + " takes one or two --in matrices");
  MatrixBuffer a = load_matrix(cfg.in[0]);
  MatrixBuffer b = cfg.in.size() == 2 ? load_matrix(cfg.in[1]) : a;
  return {std::move(a), std::move(b)};
}

int cmd_matprod(const RunConfig& cfg) {
  const auto [a, b] = two_matrices(cfg, "matprod");
  if (a.rows != b.rows) throw UsageError("matprod: A and B must have the same number of rows");
  RunConfig local = cfg;
  local.d = a.rows;
  const double eps = scalar(cfg.eps, "eps");
  std::shared_ptr<const CodeSpec> code;
  const Construction c = resolve_construction(local, code);
  const JlParams p = resolve_params(local, eps, scalar(cfg.delta, "delta"),
                                    cfg.s.empty() ? std::nullopt : std::optional(cfg.s.front()), code.get());
  const SparseSketch sk = sample(c, p);
  const MatrixBuffer approx = approx_matrix_product(sk, a, b);
  const double err = frobenius_norm(subtract(approx, transpose_product(a, b)));
  const double bound = 1.5 * eps * frobenius_norm(a) * frobenius_norm(b);
  const bool pass = err <= bound;
  json j{{"d", p.d},        {"k", p.k}, {"s", p.s}, {"rows", approx.rows}, {"cols", approx.cols}, {"error_fro", err},
         {"bound", bound}, {"verdict", pass ? "PASS" : "FAIL"}};
  j["product"] = approx.data;
  if (cfg.format == "json") {
    emit_json(cfg, j, cfg.out);
  } else {
    Emitter e(cfg.out);
    *e.os << "# d=" << p.d << " k=" << p.k << " s=" << p.s << " error_fro=" << format_double(err)
          << " bound=" << format_double(bound) << " verdict=" << (pass ? "PASS" : "FAIL") << '\n';
    write_matrix_csv(*e.os, approx);
  }
  return pass ? kExitOk : kExitStatistical;
}

// A streams in as turnstile updates of its nonzero entries; b is the second
// input or the last column of the only input.
int cmd_regress(const RunConfig& cfg) {
  if (cfg.in.empty() || cfg.in.size() > 2) throw UsageError("regress takes one or two --in matrices");
  MatrixBuffer a = load_matrix(cfg.in[0]);
  std::vector<double> b;
  if (cfg.in.size() == 2) {
    b = read_vector(cfg.in[1], a.rows);
  } else {
    if (a.cols < 2) throw UsageError("regress: single input needs at least two columns (A then b)");
    b = a.column(a.cols - 1);
    MatrixBuffer trimmed = MatrixBuffer::zeros(a.rows, a.cols - 1);
    for (std::uint64_t r = 0; r < a.rows; ++r) {
      for (std::uint64_t c = 0; c + 1 < a.cols; ++c) trimmed.at(r, c) = a.at(r, c);
    }
    a = std::move(trimmed);
  }
  RunConfig local = cfg;
  local.d = a.rows;
  const ConstructionTag tag = parse_construction(cfg.construction);
  if (tag == ConstructionTag::kCodeBlock || tag == ConstructionTag::kCodeGraph) {
    throw UsageError("regress supports block, graph, dks and dense");
  }
  const JlParams p = resolve_params(local, scalar(cfg.eps, "eps"), scalar(cfg.delta, "delta"),
                                    cfg.s.empty() ? std::nullopt : std::optional(cfg.s.front()), nullptr);
  RegressionState st = regression_init(p, a.cols, tag);
  for (std::uint64_t i = 0; i < a.rows; ++i) {
    for (std::uint64_t j = 0; j < a.cols; ++j) regression_update(st, RegressionTarget::kA, i, j, a.at(i, j));
    regression_update(st, RegressionTarget::kB, i, 0, b[i]);
  }
  const auto x = regression_solve(st);
  const double r = residual_norm(a, x, b);
  if (cfg.format == "json") {
    emit_json(cfg, json{{"x", x}, {"residual", r}, {"k", p.k}, {"s", p.s}}, cfg.out);
  } else {
    Emitter e(cfg.out);
    *e.os << "index,x\n";
    for (std::size_t j = 0; j < x.size(); ++j) *e.os << j << ',' << format_double(x[j]) << '\n';
    *e.os << "residual," << format_double(r) << '\n';
  }
  return kExitOk;
}

void add_common(CLI::App* app, RunConfig& cfg, bool lists) {
  app->add_option("--d", cfg.d, "Input dimension (default 1024, or the code size)")->check(CLI::PositiveNumber);
  if (lists) {
    app->add_option("--eps", cfg.eps, "Distortion targets (comma separated)")->delimiter(',');
    app->add_option("--delta", cfg.delta, "Failure probabilities (comma separated)")->delimiter(',');
    app->add_option("--s", cfg.s, "Sparsity overrides (comma separated)")->delimiter(',');
  } else {
    app->add_option("--eps", cfg.eps, "Distortion target")->expected(1);
    app->add_option("--delta", cfg.delta, "Failure probability")->expected(1);
    app->add_option("--s", cfg.s, "Sparsity override")->expected(1);
  }
  app->add_option("--k", cfg.k, "Target dimension request (rounded up to s * 2^j)");
  app->add_option("--ck", cfg.c_k, "Constant in k = c_k ell / eps^2");
  app->add_option("--cs", cfg.c_s, "Constant in s = c_s ell / eps");
  app->add_option("--seed", cfg.seed, "Master seed");
  app->add_option("--trials", cfg.trials, "Monte Carlo draws");
  app->add_option("--construction,--scheme", cfg.construction, "block, graph, dks, code or dense")
      ->check(CLI::IsMember({"block", "graph", "dks", "code", "dense"}));
  app->add_option("--code-file", cfg.code_file, "Code CSV, one codeword per line");
  app->add_option("--code-kind", cfg.code_kind, "qary or binary (0/1 rows of constant weight)")
      ->check(CLI::IsMember({"qary", "binary"}));
  app->add_option("--in", cfg.in, "Input file(s): CSV or binary matrix");
  app->add_option("--out", cfg.out, "Output path (stdout if omitted)");
  app->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)");
  app->add_flag("--reproducible", cfg.reproducible, "Omit the timestamp field");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse Johnson-Lindenstrauss transforms"};
  app.require_subcommand(1);
  app.footer(std::string("Exit codes: 0 success, 2 validation error, 3 statistical check failed.\n") + kCsvColumns);

  RunConfig cfg;
  std::string sketch_path;
  auto* gen = app.add_subcommand("gen", "Sample a sketch and write the binary sketch file");
  add_common(gen, cfg, false);
  auto* apply = app.add_subcommand("apply", "Apply a sketch to a vector");
  add_common(apply, cfg, false);
  apply->add_option("--sketch", sketch_path, "Sketch file from gen (sampled from flags if omitted)");
  auto* bench_distortion = app.add_subcommand("bench-distortion", "Distortion statistics over sketch draws");
  add_common(bench_distortion, cfg, false);
  auto* bench_failure = app.add_subcommand("bench-failure", "Failure-rate grid with Wilson upper bounds");
  add_common(bench_failure, cfg, true);
  bench_failure->add_flag("--lower-bound", cfg.lower_bound, "Run the hard-vector lower-bound experiment");
  auto* lower_bound = app.add_subcommand("lower-bound", "Hard-vector lower-bound experiment");
  add_common(lower_bound, cfg, true);
  auto* verify_code = app.add_subcommand("verify-code", "Check a code's minimum distance against k and s");
  add_common(verify_code, cfg, false);
  auto* matprod = app.add_subcommand("matprod", "Approximate A^T B through a sketch");
  add_common(matprod, cfg, false);
  auto* regress = app.add_subcommand("regress", "Sketched least squares on a streamed system");
  add_common(regress, cfg, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*gen) return cmd_gen(cfg);
    if (*apply) return cmd_apply(cfg, sketch_path);
    if (*bench_distortion) return cmd_bench_distortion(cfg);
    if (*bench_failure) return cmd_bench_failure(cfg, cfg.lower_bound);
    if (*lower_bound) return cmd_bench_failure(cfg, true);
    if (*verify_code) return cmd_verify_code(cfg);
    if (*matprod) return cmd_matprod(cfg);
    if (*regress) return cmd_regress(cfg);
  } catch (const RankDeficientError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitValidation;
}
