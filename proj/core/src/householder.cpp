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

#include "randqr/householder.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <string>

#include "randqr/errors.hpp"

namespace randqr {

namespace {

std::atomic<std::uint64_t> g_dense_expansions{0};

double dot(std::span<const double> x, std::span<const double> y) {
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * y[i];
  return sum;
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

// x <- (I - 2 v v^T) x on a span that already starts at the reflector offset.
void reflect(std::span<const double> v, std::span<double> x) {
  const double s = 2.0 * dot(v, x.first(v.size()));
  if (s == 0.0) return;
  for (std::size_t i = 0; i < v.size(); ++i) x[i] -= s * v[i];
}

struct Sweep {
  std::vector<Reflector> reflectors;
  std::vector<std::size_t> perm;
};

// Runs `steps` Householder steps on `work` in place. Column j of the result
// is exactly upper triangular: the pivot entry is set to beta and entries
// below it to zero. The last row needs no reflector.
Sweep householder_sweep(Matrix& work, std::size_t steps, bool pivot) {
  const std::size_t m = work.rows();
  const std::size_t n = work.cols();
  Sweep out;
  out.perm.resize(n);
  std::iota(out.perm.begin(), out.perm.end(), std::size_t{0});

  for (std::size_t j = 0; j < steps; ++j) {
    if (pivot) {
      std::size_t best = j;
      double best_norm = -1.0;
      for (std::size_t c = j; c < n; ++c) {
        const double nc = norm2(work.col(c).subspan(j));
        if (nc > best_norm) {
          best_norm = nc;
          best = c;
        }
      }
      if (best != j) {
        std::swap_ranges(work.col(j).begin(), work.col(j).end(), work.col(best).begin());
        std::swap(out.perm[j], out.perm[best]);
      }
    }
    if (j + 1 >= m) continue;

    auto [h, beta] = reflector_from_vector(work.col(j).subspan(j), j);
    auto column = work.col(j);
    column[j] = beta;
    std::fill(column.begin() + static_cast<std::ptrdiff_t>(j) + 1, column.end(), 0.0);
    if (!h.is_identity()) {
      for (std::size_t c = j + 1; c < n; ++c) reflect(h.v, work.col(c).subspan(j));
    }
    out.reflectors.push_back(std::move(h));
  }
  return out;
}

void zero_below_diagonal(Matrix& r) {
  for (std::size_t j = 0; j < r.cols(); ++j)
    for (std::size_t i = j + 1; i < r.rows(); ++i) r(i, j) = 0.0;
}

}  // namespace

bool Reflector::is_identity() const {
  return std::ranges::all_of(v, [](double x) { return x == 0.0; });
}

void Reflector::apply(std::span<double> x) const {
  if (end() > x.size()) throw DimensionError("reflector does not fit vector");
  reflect(v, x.subspan(offset));
}

ReflectorFromVector reflector_from_vector(std::span<const double> a, std::size_t offset) {
  ReflectorFromVector out;
  out.reflector.offset = offset;
  out.reflector.v.assign(a.size(), 0.0);
  const double norm_a = norm2(a);
  if (a.empty() || norm_a == 0.0) return out;

  const double sign = a[0] < 0.0 ? -1.0 : 1.0;
  out.beta = -sign * norm_a;
  // beta e_1 - a; the first entry is -sign (|a_1| + ||a||), free of cancellation.
  auto& v = out.reflector.v;
  v[0] = out.beta - a[0];
  for (std::size_t i = 1; i < a.size(); ++i) v[i] = -a[i];
  const double nv = norm2(v);
  for (double& x : v) x /= nv;
  return out;
}

WYFactor::WYFactor(Matrix w, Matrix v) : dim_(w.rows()), w_(std::move(w)), v_(std::move(v)) {
  if (v_.rows() != dim_ || v_.cols() != w_.cols()) throw DimensionError("WYFactor: W/V mismatch");
}

WYFactor wy_accumulate(std::span<const Reflector> reflectors, std::size_t n) {
  const std::size_t b = reflectors.size();
  Matrix w(n, b);
  Matrix v(n, b);
  std::vector<double> yv(b);
  for (std::size_t k = 0; k < b; ++k) {
    const Reflector& h = reflectors[k];
    if (h.end() > n) {
      throw DimensionError("wy_accumulate: reflector ends at " + std::to_string(h.end()) +
                           " > n = " + std::to_string(n));
    }
    auto vk = v.col(k);
    std::ranges::copy(h.v, vk.begin() + static_cast<std::ptrdiff_t>(h.offset));

    // z = -2 (v + W_k (V_k^T v)), using that v is zero outside its range.
    for (std::size_t p = 0; p < k; ++p) {
      yv[p] = dot(v.col(p).subspan(h.offset, h.v.size()), h.v);
    }
    auto zk = w.col(k);
    for (std::size_t i = 0; i < n; ++i) zk[i] = vk[i];
    for (std::size_t p = 0; p < k; ++p) {
      if (yv[p] == 0.0) continue;
      auto wp = w.col(p);
      for (std::size_t i = 0; i < n; ++i) zk[i] += wp[i] * yv[p];
    }
    for (double& z : zk) z *= -2.0;
  }
  return WYFactor(std::move(w), std::move(v));
}

void apply_wy_left(const WYFactor& u, MatrixView a, bool transposed) {
  if (a.rows != u.dim()) {
    throw DimensionError("apply_wy_left: U is " + std::to_string(u.dim()) + "-dimensional, A has " +
                         std::to_string(a.rows) + " rows");
  }
  if (u.count() == 0 || a.cols == 0) return;
  // U a = a + W (V^T a);  U^T a = a + V (W^T a).
  const Matrix& inner = transposed ? u.w() : u.v();
  const Matrix& outer = transposed ? u.v() : u.w();
  Matrix t(u.count(), a.cols);
  gemm(Op::Trans, Op::None, 1.0, inner, a, 0.0, t);
  gemm(Op::None, Op::None, 1.0, outer, t, 1.0, a);
}

Matrix wy_multiply_left(const WYFactor& u, ConstMatrixView a, bool transposed) {
  Matrix out(a);
  apply_wy_left(u, out.view(), transposed);
  return out;
}

void apply_wy_right(MatrixView a, const WYFactor& u, bool transposed) {
  if (a.cols != u.dim()) {
    throw DimensionError("apply_wy_right: U is " + std::to_string(u.dim()) +
                         "-dimensional, A has " + std::to_string(a.cols) + " columns");
  }
  if (u.count() == 0 || a.rows == 0) return;
  // a U = a + (a W) V^T;  a U^T = a + (a V) W^T.
  const Matrix& inner = transposed ? u.v() : u.w();
  const Matrix& outer = transposed ? u.w() : u.v();
  Matrix t(a.rows, u.count());
  gemm(Op::None, Op::None, 1.0, a, inner, 0.0, t);
  gemm(Op::None, Op::Trans, 1.0, t, outer, 1.0, a);
}

Matrix wy_multiply_right(ConstMatrixView a, const WYFactor& u, bool transposed) {
  Matrix out(a);
  apply_wy_right(out.view(), u, transposed);
  return out;
}

Matrix wy_leading_columns(const WYFactor& u, std::size_t cols) {
  if (cols > u.dim()) throw DimensionError("wy_leading_columns: too many columns");
  Matrix e(u.dim(), cols);
  for (std::size_t j = 0; j < cols; ++j) e(j, j) = 1.0;
  apply_wy_left(u, e.view());
  return e;
}

Matrix wy_to_dense(const WYFactor& u) {
  note_dense_expansion();
  Matrix e = Matrix::identity(u.dim());
  apply_wy_left(u, e.view());
  return e;
}

std::uint64_t dense_expansion_count() { return g_dense_expansions.load(); }
void note_dense_expansion() { g_dense_expansions.fetch_add(1); }

QRResult qr_unpivoted(ConstMatrixView a) {
  if (a.rows < a.cols) {
    throw DimensionError("qr_unpivoted: needs rows >= cols, got " + std::to_string(a.rows) + "x" +
                         std::to_string(a.cols));
  }
  Matrix work(a);
  auto sweep = householder_sweep(work, a.cols, /*pivot=*/false);
  QRResult out;
  out.rows = a.rows;
  out.reflectors = std::move(sweep.reflectors);
  out.r = Matrix(work.block(0, 0, a.cols, a.cols));
  zero_below_diagonal(out.r);
  out.trailing = Matrix(a.rows - a.cols, 0);
  return out;
}

QRResult qr_column_pivoted(ConstMatrixView a, std::optional<std::size_t> steps) {
  const std::size_t full = std::min(a.rows, a.cols);
  const std::size_t s = steps.value_or(full);
  if (s > full) {
    throw ArgumentError("qr_column_pivoted: steps = " + std::to_string(s) +
                        " exceeds min(rows, cols) = " + std::to_string(full));
  }
  Matrix work(a);
  auto sweep = householder_sweep(work, s, /*pivot=*/true);
  QRResult out;
  out.rows = a.rows;
  out.reflectors = std::move(sweep.reflectors);
  out.r = Matrix(work.block(0, 0, s, a.cols));
  zero_below_diagonal(out.r);
  out.trailing = Matrix(work.block(s, s, a.rows - s, a.cols - s));
  out.perm = std::move(sweep.perm);
  return out;
}

QRResult qr_tall_pivoted(ConstMatrixView a) {
  QRResult outer = qr_unpivoted(a);
  QRResult inner = qr_column_pivoted(outer.r);
  // Q'' acts on the leading b rows, which embed unchanged into the m rows.
  outer.reflectors.insert(outer.reflectors.end(), std::make_move_iterator(inner.reflectors.begin()),
                          std::make_move_iterator(inner.reflectors.end()));
  outer.r = std::move(inner.r);
  outer.perm = std::move(inner.perm);
  return outer;
}

Matrix permute_columns(ConstMatrixView a, std::span<const std::size_t> order) {
  if (order.size() != a.cols) throw DimensionError("permute_columns: order size mismatch");
  Matrix out(a.rows, a.cols);
  for (std::size_t j = 0; j < a.cols; ++j) {
    if (order[j] >= a.cols) throw ArgumentError("permute_columns: index out of range");
    std::ranges::copy(a.col(order[j]), out.col(j).begin());
  }
  return out;
}

void permute_columns_in_place(MatrixView a, std::span<const std::size_t> order) {
  Matrix tmp = permute_columns(a, order);
  a.assign(tmp);
}

}  // namespace randqr
