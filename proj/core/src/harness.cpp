// Copyright 2026 The randqr Authors.
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

#include "randqr/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "randqr/errors.hpp"
#include "randqr/householder.hpp"
#include "randqr/svd.hpp"

namespace randqr {

namespace {

std::string format17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string_view kind_name(MatrixKind k) {
  switch (k) {
    case MatrixKind::Fast: return "fast";
    case MatrixKind::Gauss: return "gauss";
    case MatrixKind::SShape: return "sshape";
  }
  return "unknown";
}

std::optional<MatrixKind> parse_kind(std::string_view s) {
  if (s == "fast") return MatrixKind::Fast;
  if (s == "gauss") return MatrixKind::Gauss;
  if (s == "sshape") return MatrixKind::SShape;
  return std::nullopt;
}

std::optional<Method> parse_method(std::string_view s) {
  for (Method m : {Method::ColumnPivoted, Method::SVD, Method::PermPivot, Method::ReflectorPivot,
                   Method::RRQR}) {
    if (s == method_name(m)) return m;
  }
  return std::nullopt;
}

std::vector<double> fast_spectrum(std::size_t n) {
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = std::pow(1e-5, static_cast<double>(i) / static_cast<double>(n - 1));
  }
  return s;
}

std::vector<double> sshape_spectrum(std::size_t n) {
  std::vector<double> s(n);
  const double nd = static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double k = static_cast<double>(i + 1);
    s[i] = std::pow(10.0, -2.5 * (1.0 + std::tanh(10.0 * (k - nd / 2.0) / nd)));
  }
  return s;
}

Matrix random_orthogonal(std::size_t n, RngState& rng) {
  const QRResult qr = qr_unpivoted(gaussian_matrix(n, n, rng));
  Matrix q = wy_leading_columns(qr.q(), n);
  for (std::size_t j = 0; j < n; ++j) {
    if (qr.r(j, j) < 0.0)
      for (double& v : q.col(j)) v = -v;
  }
  return q;
}

TestMatrix gen_matrix(const TestMatrixSpec& spec, RngState& rng) {
  if (spec.n < 2) throw ArgumentError("test matrix size must be >= 2");
  const std::size_t n = spec.n;
  if (spec.kind == MatrixKind::Gauss) {
    Matrix a = gaussian_matrix(n, n, rng);
    auto s = svd_values(a);
    return {std::move(a), std::move(s)};
  }
  auto s = spec.kind == MatrixKind::Fast ? fast_spectrum(n) : sshape_spectrum(n);
  Matrix u = random_orthogonal(n, rng);
  const Matrix v = random_orthogonal(n, rng);
  for (std::size_t j = 0; j < n; ++j)
    for (double& x : u.col(j)) x *= s[j];
  return {matmul_nt(u, v), std::move(s)};
}

std::vector<std::size_t> block_ranks(std::size_t n, std::size_t b) {
  std::vector<std::size_t> ks;
  for (std::size_t k = 0; k < n; k += b) ks.push_back(k);
  ks.push_back(n);
  return ks;
}

ErrorCurve truncation_errors(ConstMatrixView a, const Factorization& f,
                             const std::vector<std::size_t>& ks) {
  for (std::size_t k : ks)
    if (k > f.n) throw ArgumentError("truncation rank " + std::to_string(k) + " > n");

  const Matrix q = expand_q(f);
  const Matrix rpt = matmul_nt(f.r, expand_p(f));  // R P^T
  const Matrix a_copy(a);

  ErrorCurve curve;
  curve.label = std::string(method_name(f.method));
  curve.ks = ks;
  for (std::size_t k : ks) {
    Matrix e = a_copy;
    if (k > 0) {
      gemm(Op::None, Op::None, -1.0, q.block(0, 0, f.m, k), rpt.block(0, 0, k, f.n), 1.0, e);
    }
    curve.spectral.push_back(spectral_norm(e));
    curve.frobenius.push_back(frobenius_norm(e));
  }
  return curve;
}

ErrorCurve svd_error_curve(const std::vector<double>& singular_values,
                           const std::vector<std::size_t>& ks) {
  const std::size_t n = singular_values.size();
  // tail[k] = sum_{j >= k} s_j^2, accumulated from the small end.
  std::vector<double> tail(n + 1, 0.0);
  for (std::size_t j = n; j-- > 0;) {
    tail[j] = tail[j + 1] + singular_values[j] * singular_values[j];
  }
  ErrorCurve curve;
  curve.label = "svd";
  curve.ks = ks;
  for (std::size_t k : ks) {
    if (k > n) throw ArgumentError("truncation rank " + std::to_string(k) + " > n");
    curve.spectral.push_back(k < n ? singular_values[k] : 0.0);
    curve.frobenius.push_back(std::sqrt(tail[k]));
  }
  return curve;
}

DiagComparison diag_comparison(const Factorization& f,
                               const std::vector<double>& singular_values) {
  DiagComparison d;
  const std::size_t n = std::min(f.r.rows(), singular_values.size());
  for (std::size_t k = 0; k < n; ++k) {
    d.k.push_back(k + 1);
    d.r_abs.push_back(std::abs(f.r(k, k)));
    d.sigma.push_back(singular_values[k]);
  }
  return d;
}

double max_diag_deviation(const DiagComparison& d) {
  double worst = 0.0;
  for (std::size_t i = 0; i < d.k.size(); ++i) {
    if (d.sigma[i] > 0.0) worst = std::max(worst, std::abs(d.r_abs[i] / d.sigma[i] - 1.0));
  }
  return worst;
}

std::uint64_t pivot_seed(std::uint64_t seed) { return seed + 0x9E3779B97F4A7C15ULL; }

ExperimentResult run_experiment(const TestMatrixSpec& spec, Method method, const BlockConfig& cfg,
                                RngState& rng, const ExperimentOptions& opts) {
  RngState matrix_rng(spec.seed);
  return run_experiment(gen_matrix(spec, matrix_rng), method, cfg, rng, opts);
}

ExperimentResult run_experiment(const TestMatrix& tm, Method method, const BlockConfig& cfg,
                                RngState& rng, const ExperimentOptions& opts) {
  Factorization f;
  BlockConfig c = cfg;
  switch (method) {
    case Method::ColumnPivoted: f = cpqr_factorization(tm.a); break;
    case Method::SVD: f = svd_factorization(tm.a); break;
    case Method::PermPivot:
      c.pivot_kind = PivotKind::Permutation;
      f = block_qr(tm.a, c, rng);
      break;
    case Method::ReflectorPivot:
      c.pivot_kind = PivotKind::Reflectors;
      f = block_qr(tm.a, c, rng);
      break;
    case Method::RRQR: f = block_rrqr(tm.a, c, rng); break;
  }
  const std::size_t n = tm.a.cols();
  std::vector<std::size_t> ks;
  if (opts.all_ranks) {
    for (std::size_t k = 0; k <= n; ++k) ks.push_back(k);
  } else {
    ks = block_ranks(n, cfg.block);
  }
  return {truncation_errors(tm.a, f, ks), diag_comparison(f, tm.singular_values)};
}

void write_csv(std::ostream& out, const ExperimentResult& r) {
  out << "k,spectral_err,frobenius_err,r_diag,sigma\n";
  const auto& c = r.curve;
  for (std::size_t i = 0; i < c.ks.size(); ++i) {
    const std::size_t k = c.ks[i];
    out << k << ',' << format17(c.spectral[i]) << ',' << format17(c.frobenius[i]) << ',';
    if (k > 0 && k <= r.diag.k.size()) {
      out << format17(r.diag.r_abs[k - 1]) << ',' << format17(r.diag.sigma[k - 1]);
    } else {
      out << ',';
    }
    out << '\n';
  }
}

BlockConfig method_config(Method method, std::size_t b, std::size_t q) {
  switch (method) {
    case Method::ReflectorPivot: return BlockConfig::method2(b, q);
    case Method::RRQR: return BlockConfig::method3(b, q);
    default: {
      BlockConfig cfg = BlockConfig::method1(b);
      cfg.sketch = SketchConfig::make(b, 0, q);
      return cfg;
    }
  }
}

std::vector<SuiteCell> suite_grid() {
  std::vector<SuiteCell> cells;
  for (MatrixKind k : {MatrixKind::Fast, MatrixKind::Gauss, MatrixKind::SShape}) {
    for (Method m : {Method::ColumnPivoted, Method::SVD, Method::PermPivot}) cells.push_back({k, m, 0});
    for (Method m : {Method::ReflectorPivot, Method::RRQR})
      for (std::size_t q = 0; q <= 2; ++q) cells.push_back({k, m, q});
  }
  return cells;
}

std::string csv_name(MatrixKind kind, Method method, std::size_t q) {
  return std::string(kind_name(kind)) + "_" + std::string(method_name(method)) + "_q" +
         std::to_string(q) + ".csv";
}

}  // namespace randqr
