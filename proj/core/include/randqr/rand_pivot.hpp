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
#include <variant>
#include <vector>

#include "randqr/householder.hpp"
#include "randqr/matrix.hpp"
#include "randqr/rng.hpp"

namespace randqr {

/// Shape of the randomized sample used to pick a block of pivots.
///
/// The sample has block + oversample columns; only `block` pivots are kept.
/// `power` applications of X^T X sharpen the sample. When
/// `orthonormalize_between_powers` is set, the sample is replaced by an
/// orthonormal basis of its columns after every product with X or X^T.
struct SketchConfig {
  std::size_t block = 1;
  std::size_t oversample = 0;
  std::size_t power = 0;
  bool orthonormalize_between_powers = false;

  /// Re-orthonormalization is switched on for power >= 2.
  static SketchConfig make(std::size_t block, std::size_t oversample, std::size_t power);

  std::size_t width() const { return block + oversample; }
  /// Throws ArgumentError unless 1 <= block and block + oversample <= cols.
  void validate(std::size_t cols) const;
};

/// Column permutation: column j of A P is column order[j] of A.
struct Permutation {
  std::vector<std::size_t> order;
};

/// Orthonormal pivot built from Householder reflectors, kept in WY form.
struct ReflectorProduct {
  WYFactor u;
};

using PivotTransform = std::variant<Permutation, ReflectorProduct>;

/// Y = (X^T X)^q X^T Omega with Omega an m x (b + r) standard Gaussian
/// drawn from `rng`. Result is n x (b + r).
Matrix build_sketch(ConstMatrixView x, const SketchConfig& cfg, RngState& rng);

/// Runs b steps of column-pivoted QR on Y^T and returns the order that puts
/// the b chosen columns first and keeps the rest in their original order.
Permutation select_pivot_permutation(ConstMatrixView y, std::size_t b);

/// The first b reflectors of an unpivoted Householder QR of Y, so that
/// S^T Y(:, 1:b) is upper triangular. Always holds exactly b reflectors;
/// when Y has only b rows the last one is the identity.
ReflectorProduct select_pivot_reflectors(ConstMatrixView y, std::size_t b);

/// Orthonormal basis of the columns of m (rows >= cols), from the Q factor
/// of an unpivoted QR.
Matrix orthonormalize_columns(ConstMatrixView m);

}  // namespace randqr
