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

#include "randqr/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "randqr/errors.hpp"
#include "randqr/svd.hpp"

namespace randqr {

namespace {

void check_block(std::size_t rows, std::size_t cols, std::size_t r0, std::size_t c0,
                 std::size_t nr, std::size_t nc) {
  if (r0 + nr > rows || c0 + nc > cols) {
    throw DimensionError("block (" + std::to_string(r0) + "+" + std::to_string(nr) + ", " +
                         std::to_string(c0) + "+" + std::to_string(nc) + ") outside " +
                         std::to_string(rows) + "x" + std::to_string(cols));
  }
}

std::string shape(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

}  // namespace

ConstMatrixView ConstMatrixView::block(std::size_t r0, std::size_t c0, std::size_t nr,
                                       std::size_t nc) const {
  check_block(rows, cols, r0, c0, nr, nc);
  return {data + r0 + c0 * ld, nr, nc, ld};
}

MatrixView MatrixView::block(std::size_t r0, std::size_t c0, std::size_t nr,
                             std::size_t nc) const {
  check_block(rows, cols, r0, c0, nr, nc);
  return {data + r0 + c0 * ld, nr, nc, ld};
}

void MatrixView::fill(double value) const {
  for (std::size_t j = 0; j < cols; ++j) std::ranges::fill(col(j), value);
}

void MatrixView::assign(ConstMatrixView src) const {
  if (src.rows != rows || src.cols != cols) {
    throw DimensionError("assign " + shape(src.rows, src.cols) + " into " + shape(rows, cols));
  }
  for (std::size_t j = 0; j < cols; ++j) std::ranges::copy(src.col(j), col(j).begin());
}

Matrix::Matrix(std::size_t rows, std::size_t cols, double value)
    : rows_(rows), cols_(cols), data_(rows * cols, value) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.resize(rows_ * cols_);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionError("ragged matrix initializer");
    std::size_t j = 0;
    for (double v : row) (*this)(i, j++) = v;
    ++i;
  }
}

Matrix::Matrix(ConstMatrixView view) : Matrix(view.rows, view.cols) {
  this->view().assign(view);
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

bool Matrix::all_finite() const {
  return std::ranges::all_of(data_, [](double v) { return std::isfinite(v); });
}

void gemm(Op op_a, Op op_b, double alpha, ConstMatrixView a, ConstMatrixView b, double beta,
          MatrixView c) {
  const bool ta = op_a == Op::Trans;
  const bool tb = op_b == Op::Trans;
  const std::size_t m = ta ? a.cols : a.rows;
  const std::size_t k = ta ? a.rows : a.cols;
  const std::size_t kb = tb ? b.cols : b.rows;
  const std::size_t n = tb ? b.rows : b.cols;
  if (k != kb || c.rows != m || c.cols != n) {
    throw DimensionError("gemm: op(A) " + shape(m, k) + ", op(B) " + shape(kb, n) + ", C " +
                         shape(c.rows, c.cols));
  }

  if (beta == 0.0) {
    c.fill(0.0);
  } else if (beta != 1.0) {
    for (std::size_t j = 0; j < n; ++j)
      for (double& v : c.col(j)) v *= beta;
  }
  if (k == 0 || alpha == 0.0) return;

  if (!ta && !tb) {
    for (std::size_t j = 0; j < n; ++j) {
      double* cj = c.data + j * c.ld;
      for (std::size_t p = 0; p < k; ++p) {
        const double s = alpha * b(p, j);
        if (s == 0.0) continue;
        const double* ap = a.data + p * a.ld;
        for (std::size_t i = 0; i < m; ++i) cj[i] += ap[i] * s;
      }
    }
  } else if (ta && !tb) {
    for (std::size_t j = 0; j < n; ++j) {
      const double* bj = b.data + j * b.ld;
      for (std::size_t i = 0; i < m; ++i) {
        const double* ai = a.data + i * a.ld;
        double sum = 0.0;
        for (std::size_t p = 0; p < k; ++p) sum += ai[p] * bj[p];
        c(i, j) += alpha * sum;
      }
    }
  } else if (!ta && tb) {
    for (std::size_t p = 0; p < k; ++p) {
      const double* ap = a.data + p * a.ld;
      for (std::size_t j = 0; j < n; ++j) {
        const double s = alpha * b(j, p);
        if (s == 0.0) continue;
        double* cj = c.data + j * c.ld;
        for (std::size_t i = 0; i < m; ++i) cj[i] += ap[i] * s;
      }
    }
  } else {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < m; ++i) {
        const double* ai = a.data + i * a.ld;
        double sum = 0.0;
        for (std::size_t p = 0; p < k; ++p) sum += ai[p] * b(j, p);
        c(i, j) += alpha * sum;
      }
    }
  }
}

Matrix matmul(ConstMatrixView a, ConstMatrixView b) {
  if (a.cols != b.rows) {
    throw DimensionError("matmul: " + shape(a.rows, a.cols) + " * " + shape(b.rows, b.cols));
  }
  Matrix c(a.rows, b.cols);
  gemm(Op::None, Op::None, 1.0, a, b, 0.0, c);
  return c;
}

Matrix matmul_tn(ConstMatrixView a, ConstMatrixView b) {
  if (a.rows != b.rows) {
    throw DimensionError("matmul_tn: " + shape(a.rows, a.cols) + "^T * " + shape(b.rows, b.cols));
  }
  Matrix c(a.cols, b.cols);
  gemm(Op::Trans, Op::None, 1.0, a, b, 0.0, c);
  return c;
}

Matrix matmul_nt(ConstMatrixView a, ConstMatrixView b) {
  if (a.cols != b.cols) {
    throw DimensionError("matmul_nt: " + shape(a.rows, a.cols) + " * " + shape(b.rows, b.cols) +
                         "^T");
  }
  Matrix c(a.rows, b.rows);
  gemm(Op::None, Op::Trans, 1.0, a, b, 0.0, c);
  return c;
}

Matrix transpose(ConstMatrixView a) {
  Matrix t(a.cols, a.rows);
  for (std::size_t j = 0; j < a.cols; ++j)
    for (std::size_t i = 0; i < a.rows; ++i) t(j, i) = a(i, j);
  return t;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("subtract " + shape(a.rows(), a.cols()) + " - " +
                         shape(b.rows(), b.cols()));
  }
  Matrix c(a.rows(), a.cols());
  std::ranges::transform(a.data(), b.data(), c.data().begin(), std::minus<>{});
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("add " + shape(a.rows(), a.cols()) + " + " + shape(b.rows(), b.cols()));
  }
  Matrix c(a.rows(), a.cols());
  std::ranges::transform(a.data(), b.data(), c.data().begin(), std::plus<>{});
  return c;
}

std::vector<double> column_norms(ConstMatrixView a) {
  std::vector<double> norms(a.cols);
  for (std::size_t j = 0; j < a.cols; ++j) {
    double sum = 0.0;
    for (double v : a.col(j)) sum += v * v;
    norms[j] = std::sqrt(sum);
  }
  return norms;
}

double frobenius_norm(ConstMatrixView a) {
  double sum = 0.0;
  for (std::size_t j = 0; j < a.cols; ++j)
    for (double v : a.col(j)) sum += v * v;
  return std::sqrt(sum);
}

double spectral_norm(ConstMatrixView a) {
  if (a.rows == 0 || a.cols == 0) return 0.0;
  const auto values = svd_values(a);
  return values.front();
}

double orthogonality_error(ConstMatrixView q) {
  Matrix g = matmul_tn(q, q);
  for (std::size_t i = 0; i < g.rows(); ++i) g(i, i) -= 1.0;
  return frobenius_norm(g);
}

void write_matrix(std::ostream& out, ConstMatrixView a) {
  out << a.rows << ' ' << a.cols << '\n';
  char buf[32];
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < a.cols; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", a(i, j));
      if (j > 0) out << ' ';
      out << buf;
    }
    out << '\n';
  }
}

Matrix read_matrix(std::istream& in) {
  std::size_t rows = 0;
  std::size_t cols = 0;
  if (!(in >> rows >> cols)) throw ArgumentError("matrix text: missing 'rows cols' header");
  Matrix a(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      std::string token;
      if (!(in >> token)) {
        throw ArgumentError("matrix text: expected " + std::to_string(rows * cols) + " entries");
      }
      std::istringstream parse(token);
      double v = 0.0;
      if (!(parse >> v) || !parse.eof()) throw ArgumentError("matrix text: bad entry '" + token + "'");
      a(i, j) = v;
    }
  }
  return a;
}

}  // namespace randqr
