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

#include <vector>

#include "randqr/matrix.hpp"

namespace randqr {

/// Thin SVD A = U diag(d) V^T with k = min(m, n): U is m x k, V is n x k,
/// d non-increasing and non-negative.
struct SVDResult {
  Matrix u;
  std::vector<double> d;
  Matrix v;
};

/// One-sided (Hestenes) Jacobi SVD. Tall inputs are first reduced by an
/// unpivoted Householder QR and the square triangular factor is
/// diagonalized; wide inputs go through the transpose.
///
/// A pair of columns is rotated while |g_p . g_q| > sqrt(m) eps ||g_p|| ||g_q||.
/// More than 60 sweeps throws NumericalError; non-finite input throws
/// ArgumentError.
SVDResult svd_full(ConstMatrixView a);

/// Singular values only, same algorithm and ordering as svd_full.
std::vector<double> svd_values(ConstMatrixView a);

}  // namespace randqr
