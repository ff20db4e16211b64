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
#include <optional>
#include <span>
#include <vector>

#include "randqr/matrix.hpp"

namespace randqr {

/// H = I - 2 v v^T acting on coordinates [offset, offset + v.size()) of a
/// larger space and as the identity elsewhere. `v` is a unit vector, or all
/// zeros for the identity reflector produced by a zero input.
struct Reflector {
  std::vector<double> v;
  std::size_t offset = 0;

  std::size_t end() const { return offset + v.size(); }
  bool is_identity() const;
  /// x <- H x, where x lives in the full space.
  void apply(std::span<double> x) const;
};

struct ReflectorFromVector {
  Reflector reflector;
  double beta = 0.0;
};

/// Reflector with H a = beta e_1, beta = -sign(a_1) ||a|| and sign(0) = +1.
/// A zero vector yields the identity reflector with beta = 0.
ReflectorFromVector reflector_from_vector(std::span<const double> a, std::size_t offset = 0);

/// Compact form U = I + W * Y of an ordered reflector product H_1 H_2 ... H_b
/// on an n-dimensional space. Y is kept as its transpose V (n x b), whose
/// columns are the embedded reflector vectors.
class WYFactor {
 public:
  explicit WYFactor(std::size_t dim = 0) : dim_(dim), w_(dim, 0), v_(dim, 0) {}
  WYFactor(Matrix w, Matrix v);

  std::size_t dim() const { return dim_; }
  std::size_t count() const { return w_.cols(); }
  const Matrix& w() const { return w_; }
  /// Y = V^T (b x n).
  Matrix y() const { return transpose(v_); }
  const Matrix& v() const { return v_; }

 private:
  std::size_t dim_;
  Matrix w_;
  Matrix v_;
};

/// Builds I + W Y = H_1 H_2 ... H_b by appending one reflector at a time:
/// (I + W Y)(I - 2 v v^T) = I + [W, -2 (v + W (Y v))] [Y; v^T].
WYFactor wy_accumulate(std::span<const Reflector> reflectors, std::size_t n);

/// a <- U a, or U^T a when `transposed`.
void apply_wy_left(const WYFactor& u, MatrixView a, bool transposed = false);
Matrix wy_multiply_left(const WYFactor& u, ConstMatrixView a, bool transposed = false);
/// a <- a U, or a U^T when `transposed`.
void apply_wy_right(MatrixView a, const WYFactor& u, bool transposed = false);
Matrix wy_multiply_right(ConstMatrixView a, const WYFactor& u, bool transposed = false);

/// First `cols` columns of U, i.e. U * [I; 0]. Thin, so not a dense expansion.
Matrix wy_leading_columns(const WYFactor& u, std::size_t cols);

/// Full n x n expansion of U. Only tests and metrics call this; every call
/// bumps dense_expansion_count().
Matrix wy_to_dense(const WYFactor& u);

/// Number of dense n x n orthogonal expansions performed by this process.
std::uint64_t dense_expansion_count();
void note_dense_expansion();

/// Q R (A P = Q R when `perm` is set).
///
/// Q = H_1 H_2 ... in `reflectors` order, acting on `rows` coordinates.
/// `perm[j]` is the input column placed at position j. A complete
/// factorization stores R as min(m, n) x n with exact zeros below the
/// diagonal; a partial one (s steps) stores the first s rows in `r` and the
/// updated (m - s) x (n - s) remainder in `trailing`.
struct QRResult {
  std::size_t rows = 0;
  std::vector<Reflector> reflectors;
  Matrix r;
  Matrix trailing;
  std::optional<std::vector<std::size_t>> perm;

  WYFactor q() const { return wy_accumulate(reflectors, rows); }
};

/// Householder QR without pivoting. Requires rows >= cols; R is cols x cols.
QRResult qr_unpivoted(ConstMatrixView a);

/// Classical column-pivoted Householder QR, one pivot per step, running
/// exactly `steps` iterations (defaults to min(rows, cols)). Column norms
/// are recomputed every step; ties go to the lowest index.
QRResult qr_column_pivoted(ConstMatrixView a, std::optional<std::size_t> steps = std::nullopt);

/// Pivoted QR of a tall panel: unpivoted QR A = Q' R', then pivoted QR of
/// the small R' P = Q'' R, with Q = Q' Q''.
QRResult qr_tall_pivoted(ConstMatrixView a);

/// Applies a column permutation: result(:, j) = a(:, order[j]).
Matrix permute_columns(ConstMatrixView a, std::span<const std::size_t> order);
void permute_columns_in_place(MatrixView a, std::span<const std::size_t> order);

}  // namespace randqr
