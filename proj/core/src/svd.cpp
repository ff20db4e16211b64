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

#include "randqr/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "randqr/errors.hpp"
#include "randqr/householder.hpp"

namespace randqr {

namespace {

constexpr int kMaxSweeps = 60;

double dot(const double* x, const double* y, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += x[i] * y[i];
  return sum;
}

void rotate(double* x, double* y, std::size_t n, double c, double s) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

void check_finite(ConstMatrixView a) {
  for (std::size_t j = 0; j < a.cols; ++j)
    for (double v : a.col(j))
      if (!std::isfinite(v)) throw ArgumentError("svd: input has non-finite entries");
}

// Orthogonalizes the columns of g (m x n, m >= n) in place. When v is
// non-null it accumulates the right rotations (n x n, starts as I).
void hestenes(Matrix& g, Matrix* v) {
  const std::size_t m = g.rows();
  const std::size_t n = g.cols();
  const double tol = std::sqrt(static_cast<double>(m)) * std::numeric_limits<double>::epsilon();

  // Squared column norms, recomputed each sweep and updated exactly enough
  // in between: a rotation moves t * gamma from one column to the other.
  std::vector<double> norm2(n);
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    for (std::size_t j = 0; j < n; ++j) norm2[j] = dot(g.col(j).data(), g.col(j).data(), m);
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      double* gp = g.col(p).data();
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = norm2[p];
        const double beta = norm2[q];
        if (alpha == 0.0 || beta == 0.0) continue;
        double* gq = g.col(q).data();
        const double gamma = dot(gp, gq, m);
        if (gamma == 0.0 || std::abs(gamma) <= tol * std::sqrt(alpha) * std::sqrt(beta)) continue;

        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        rotate(gp, gq, m, c, s);
        if (v) rotate(v->col(p).data(), v->col(q).data(), n, c, s);
        norm2[p] = std::max(0.0, alpha - t * gamma);
        norm2[q] = beta + t * gamma;
        rotated = true;
      }
    }
    if (!rotated) return;
  }
  throw NumericalError("svd: Jacobi did not converge in " + std::to_string(kMaxSweeps) +
                       " sweeps");
}

std::vector<std::size_t> descending_order(const std::vector<double>& d) {
  std::vector<std::size_t> order(d.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return d[x] > d[y]; });
  return order;
}

// Replaces the columns flagged in `missing` by unit vectors orthogonal to
// all other columns of u.
void complete_orthonormal(Matrix& u, std::vector<bool> missing) {
  const std::size_t m = u.rows();
  std::vector<double> cand(m);
  std::size_t next_basis = 0;
  for (std::size_t j = 0; j < u.cols(); ++j) {
    if (!missing[j]) continue;
    for (; next_basis < m; ++next_basis) {
      std::ranges::fill(cand, 0.0);
      cand[next_basis] = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t k = 0; k < u.cols(); ++k) {
          if (missing[k]) continue;
          const double proj = dot(u.col(k).data(), cand.data(), m);
          for (std::size_t i = 0; i < m; ++i) cand[i] -= proj * u(i, k);
        }
      }
      const double nc = std::sqrt(dot(cand.data(), cand.data(), m));
      if (nc > 0.5) {
        for (std::size_t i = 0; i < m; ++i) u(i, j) = cand[i] / nc;
        missing[j] = false;
        ++next_basis;
        break;
      }
    }
  }
}

// Square or tall input with m >= n.
SVDResult svd_tall(ConstMatrixView a) {
  const std::size_t m = a.rows;
  const std::size_t n = a.cols;
  if (m > n) {
    QRResult qr = qr_unpivoted(a);
    SVDResult inner = svd_tall(qr.r);
    Matrix u(m, n);
    u.block(0, 0, n, n).assign(inner.u);
    apply_wy_left(qr.q(), u.view());
    return {std::move(u), std::move(inner.d), std::move(inner.v)};
  }

  Matrix g(a);
  Matrix v = Matrix::identity(n);
  hestenes(g, &v);

  const std::vector<double> norms = column_norms(g);
  const auto order = descending_order(norms);
  SVDResult out{Matrix(m, n), std::vector<double>(n), Matrix(n, n)};
  std::vector<bool> missing(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    out.d[k] = norms[j];
    std::ranges::copy(v.col(j), out.v.col(k).begin());
    if (norms[j] <= std::numeric_limits<double>::min()) {
      out.d[k] = 0.0;
      missing[k] = true;
      continue;
    }
    for (std::size_t i = 0; i < m; ++i) out.u(i, k) = g(i, j) / norms[j];
  }
  if (std::ranges::any_of(missing, [](bool x) { return x; })) {
    complete_orthonormal(out.u, std::move(missing));
  }
  return out;
}

std::vector<double> values_tall(ConstMatrixView a) {
  if (a.rows > a.cols) return values_tall(qr_unpivoted(a).r);
  Matrix g(a);
  hestenes(g, nullptr);
  std::vector<double> d = column_norms(g);
  std::ranges::sort(d, std::greater<>{});
  return d;
}

}  // namespace

SVDResult svd_full(ConstMatrixView a) {
  check_finite(a);
  if (a.rows >= a.cols) return svd_tall(a);
  SVDResult t = svd_tall(transpose(a));
  return {std::move(t.v), std::move(t.d), std::move(t.u)};
}

std::vector<double> svd_values(ConstMatrixView a) {
  check_finite(a);
  if (a.rows >= a.cols) return values_tall(a);
  return values_tall(transpose(a));
}

}  // namespace randqr
