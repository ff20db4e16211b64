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
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

namespace randqr {

class Matrix;

/// Read-only window into column-major storage with leading dimension `ld`.
struct ConstMatrixView {
  const double* data = nullptr;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t ld = 0;

  double operator()(std::size_t i, std::size_t j) const { return data[i + j * ld]; }
  std::span<const double> col(std::size_t j) const { return {data + j * ld, rows}; }
  ConstMatrixView block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
};

/// Mutable window into column-major storage.
struct MatrixView {
  double* data = nullptr;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t ld = 0;

  double& operator()(std::size_t i, std::size_t j) const { return data[i + j * ld]; }
  std::span<double> col(std::size_t j) const { return {data + j * ld, rows}; }
  MatrixView block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  operator ConstMatrixView() const { return {data, rows, cols, ld}; }

  void fill(double value) const;
  void assign(ConstMatrixView src) const;
};

/// Dense real matrix, column-major and contiguous.
///
/// Zero-extent matrices are allowed; they show up as the empty W/Y factors
/// of an identity reflector product and as empty trailing blocks.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double value = 0.0);
  /// Row-major nested initializer, e.g. `Matrix{{1, 2}, {3, 4}}`.
  Matrix(std::initializer_list<std::initializer_list<double>> rows);
  explicit Matrix(ConstMatrixView view);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i + j * rows_]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i + j * rows_]; }

  std::span<double> col(std::size_t j) { return {data_.data() + j * rows_, rows_}; }
  std::span<const double> col(std::size_t j) const { return {data_.data() + j * rows_, rows_}; }
  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  MatrixView view() { return {data_.data(), rows_, cols_, rows_}; }
  ConstMatrixView view() const { return {data_.data(), rows_, cols_, rows_}; }
  operator MatrixView() { return view(); }
  operator ConstMatrixView() const { return view(); }

  MatrixView block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) {
    return view().block(r0, c0, nr, nc);
  }
  ConstMatrixView block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    return view().block(r0, c0, nr, nc);
  }

  bool all_finite() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

enum class Op { None, Trans };

/// C <- alpha * op(A) * op(B) + beta * C. Plain loop kernel ordered for
/// column-major access; beta == 0 overwrites C without reading it.
void gemm(Op op_a, Op op_b, double alpha, ConstMatrixView a, ConstMatrixView b, double beta,
          MatrixView c);

/// A * B. Throws DimensionError on inner-dimension mismatch.
Matrix matmul(ConstMatrixView a, ConstMatrixView b);
/// A^T * B.
Matrix matmul_tn(ConstMatrixView a, ConstMatrixView b);
/// A * B^T.
Matrix matmul_nt(ConstMatrixView a, ConstMatrixView b);

Matrix transpose(ConstMatrixView a);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);

std::vector<double> column_norms(ConstMatrixView a);
double frobenius_norm(ConstMatrixView a);
/// Largest singular value, from the full Jacobi SVD (not an estimate).
double spectral_norm(ConstMatrixView a);

/// ||A^T A - I||_F.
double orthogonality_error(ConstMatrixView q);

/// Debug text format: "rows cols" header, then one row per line with
/// 17 significant digits, space separated.
void write_matrix(std::ostream& out, ConstMatrixView a);
Matrix read_matrix(std::istream& in);

}  // namespace randqr
