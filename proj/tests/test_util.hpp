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

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "randqr/householder.hpp"
#include "randqr/matrix.hpp"
#include "randqr/rng.hpp"

namespace randqr::testing {

inline Matrix random_matrix(std::size_t m, std::size_t n, std::uint64_t seed) {
  RngState rng(seed);
  return gaussian_matrix(m, n, rng);
}

inline double max_abs_diff(ConstMatrixView a, ConstMatrixView b) {
  double worst = 0.0;
  for (std::size_t j = 0; j < a.cols; ++j)
    for (std::size_t i = 0; i < a.rows; ++i) worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  return worst;
}

inline bool strictly_lower_is_zero(ConstMatrixView r) {
  for (std::size_t j = 0; j < r.cols; ++j)
    for (std::size_t i = j + 1; i < r.rows; ++i)
      if (r(i, j) != 0.0) return false;
  return true;
}

// Dense I - 2 v v^T embedded in n dimensions, built straight from the
// definition (independent of the WY code).
inline Matrix dense_reflector(const Reflector& h, std::size_t n) {
  Matrix d = Matrix::identity(n);
  for (std::size_t i = 0; i < h.v.size(); ++i)
    for (std::size_t j = 0; j < h.v.size(); ++j)
      d(h.offset + i, h.offset + j) -= 2.0 * h.v[i] * h.v[j];
  return d;
}

inline Matrix dense_product(const std::vector<Reflector>& hs, std::size_t n) {
  Matrix p = Matrix::identity(n);
  for (const auto& h : hs) p = matmul(p, dense_reflector(h, n));
  return p;
}

inline Matrix permutation_matrix(const std::vector<std::size_t>& order) {
  Matrix p(order.size(), order.size());
  for (std::size_t j = 0; j < order.size(); ++j) p(order[j], j) = 1.0;
  return p;
}

}  // namespace randqr::testing
