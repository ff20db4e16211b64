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

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "randqr/block_factor.hpp"
#include "randqr/matrix.hpp"
#include "randqr/rng.hpp"

namespace randqr {

enum class MatrixKind { Fast, Gauss, SShape };

std::string_view kind_name(MatrixKind k);
std::optional<MatrixKind> parse_kind(std::string_view s);
std::optional<Method> parse_method(std::string_view s);

struct TestMatrixSpec {
  MatrixKind kind = MatrixKind::Fast;
  std::size_t n = 300;
  std::uint64_t seed = 1;
};

struct TestMatrix {
  Matrix a;
  std::vector<double> singular_values;
};

/// Exponential decay from 1 to 1e-5: s_i = (1e-5)^((i-1)/(n-1)).
std::vector<double> fast_spectrum(std::size_t n);
/// Flat head near 1, steep middle, flat tail near 1e-5:
/// s_k = 10^(-2.5 (1 + tanh(10 (k - n/2) / n))).
std::vector<double> sshape_spectrum(std::size_t n);

/// Haar-like orthogonal matrix: Q of a Gaussian n x n draw with columns
/// multiplied by sign(R(k,k)).
Matrix random_orthogonal(std::size_t n, RngState& rng);

/// Fast and SShape are U diag(s) V^T with U then V drawn from `rng`; Gauss is
/// a plain standard Gaussian matrix whose singular values come from the SVD.
TestMatrix gen_matrix(const TestMatrixSpec& spec, RngState& rng);

struct ErrorCurve {
  std::string label;
  std::vector<std::size_t> ks;
  std::vector<double> spectral;
  std::vector<double> frobenius;
};

struct DiagComparison {
  std::vector<std::size_t> k;  // 1-based
  std::vector<double> r_abs;
  std::vector<double> sigma;
};

/// {0, b, 2b, ..., n}, with n appended when b does not divide it.
std::vector<std::size_t> block_ranks(std::size_t n, std::size_t b);

/// e_k = ||A - Q(:, 1:k) R(1:k, :) P^T|| in both norms, from dense Q, R, P.
/// Throws ArgumentError for k > n.
ErrorCurve truncation_errors(ConstMatrixView a, const Factorization& f,
                             const std::vector<std::size_t>& ks);

/// Optimal curve: spectral s_{k+1}, Frobenius sqrt(sum_{j>k} s_j^2).
ErrorCurve svd_error_curve(const std::vector<double>& singular_values,
                           const std::vector<std::size_t>& ks);

DiagComparison diag_comparison(const Factorization& f,
                               const std::vector<double>& singular_values);

/// max_k | |R(k,k)| / s_k - 1 | over entries with s_k > 0.
double max_diag_deviation(const DiagComparison& d);

struct ExperimentResult {
  ErrorCurve curve;
  DiagComparison diag;
};

struct ExperimentOptions {
  /// Report every k in [0, n] instead of block multiples.
  bool all_ranks = false;
};

/// Runs one (matrix, method) cell. The matrix is drawn from an RngState
/// seeded with spec.seed; `rng` feeds the randomized pivoting only.
ExperimentResult run_experiment(const TestMatrixSpec& spec, Method method, const BlockConfig& cfg,
                                RngState& rng, const ExperimentOptions& opts = {});

/// Same, on a matrix that has already been generated.
ExperimentResult run_experiment(const TestMatrix& tm, Method method, const BlockConfig& cfg,
                                RngState& rng, const ExperimentOptions& opts = {});

/// Stream seed for the pivoting randomness of a run with user seed `seed`.
std::uint64_t pivot_seed(std::uint64_t seed);

/// CSV with header `k,spectral_err,frobenius_err,r_diag,sigma`, one row per
/// reported k, 17 significant digits; r_diag and sigma are empty at k = 0.
void write_csv(std::ostream& out, const ExperimentResult& r);

/// Default configuration of a method at block size b and q power steps.
/// cpqr and svd ignore it apart from the block size used for reported ranks.
BlockConfig method_config(Method method, std::size_t b, std::size_t q);

struct SuiteCell {
  MatrixKind kind;
  Method method;
  std::size_t q;
};

/// The experiment grid: every matrix with cpqr, svd and m1 at q = 0, and m2
/// and m3 at q = 0, 1, 2.
std::vector<SuiteCell> suite_grid();

/// `<matrix>_<method>_q<q>.csv`
std::string csv_name(MatrixKind kind, Method method, std::size_t q);

}  // namespace randqr
