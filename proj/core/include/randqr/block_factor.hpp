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
#include <functional>
#include <string_view>
#include <variant>
#include <vector>

#include "randqr/householder.hpp"
#include "randqr/matrix.hpp"
#include "randqr/rand_pivot.hpp"
#include "randqr/rng.hpp"

namespace randqr {

enum class PivotKind { Permutation, Reflectors };

enum class Method {
  PermPivot,       // blockQR, permutation pivots
  ReflectorPivot,  // blockQR, Householder pivots
  RRQR,            // blockRRQR
  ColumnPivoted,   // classical one-column-at-a-time pivoted QR
  SVD,             // SVD packaged as A V = U diag(d)
};

std::string_view method_name(Method m);

struct BlockConfig {
  std::size_t block = 1;
  SketchConfig sketch;
  PivotKind pivot_kind = PivotKind::Permutation;
  bool rrqr = false;

  /// Permutation pivots, no over-sampling, no power steps.
  static BlockConfig method1(std::size_t b);
  /// Householder pivots, no over-sampling.
  static BlockConfig method2(std::size_t b, std::size_t q = 0);
  /// blockRRQR; over-sampling defaults to b / 2.
  static BlockConfig method3(std::size_t b, std::size_t q = 0);
};

/// Small dense orthogonal block (panel singular vectors).
struct DenseOrthogonal {
  Matrix m;
};

using Transform = std::variant<Permutation, ReflectorProduct, DenseOrthogonal>;

/// I_offset (+) T (+) I: a transform acting on the index range
/// [offset, offset + dim).
struct PlacedTransform {
  std::size_t offset = 0;
  Transform t;

  std::size_t dim() const;
};

/// rows(a)[offset, offset + dim) <- T a, or T^T a.
void apply_left(const PlacedTransform& t, MatrixView a, bool transposed = false);
/// cols(a)[offset, offset + dim) <- a T.
void apply_right(MatrixView a, const PlacedTransform& t);

/// A P = Q R with Q and P kept as ordered products of placed transforms:
/// Q = q_transforms[0] q_transforms[1] ..., likewise for P. R is n x n.
struct Factorization {
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t b = 0;
  Method method = Method::PermPivot;
  std::vector<PlacedTransform> q_transforms;
  std::vector<PlacedTransform> p_transforms;
  Matrix r;
};

/// Leading n columns of Q (m x n). Dense expansion, for metrics and tests.
Matrix expand_q(const Factorization& f);
/// P as a dense n x n matrix.
Matrix expand_p(const Factorization& f);

/// Called after each panel with the panel index (0-based) and the working
/// matrix, which at that point holds R in its finished rows.
using PanelObserver = std::function<void(std::size_t panel, ConstMatrixView work)>;

/// Blocked Householder QR with randomized block pivoting.
///
/// Each panel of b columns: sample the trailing block, pivot the trailing
/// block columns (permutation or Householder product), factor the m' x b
/// panel with the two-stage pivoted QR and apply its reflectors to the
/// remaining columns in WY form. When at most b columns remain they are
/// factored directly with pivoted QR. A ragged last block is fine.
Factorization block_qr(ConstMatrixView a, const BlockConfig& cfg, RngState& rng,
                       const PanelObserver& observer = {});

/// Same sweep with Householder pivots from a power-iterated sample, and an
/// SVD of each panel so every diagonal block of R is diagonal.
Factorization block_rrqr(ConstMatrixView a, const BlockConfig& cfg, RngState& rng,
                         const PanelObserver& observer = {});

/// SVD of a tall panel via unpivoted QR then SVD of the b x b triangle:
/// panel = Q~ diag(U', I) [diag(d); 0] V^T.
struct PanelSvd {
  std::size_t rows = 0;
  std::vector<Reflector> reflectors;
  Matrix u_small;
  std::vector<double> d;
  Matrix v;

  WYFactor q() const { return wy_accumulate(reflectors, rows); }
  /// Leading b columns of Q~ diag(U', I), m' x b.
  Matrix u_thin() const;
};

PanelSvd panel_svd(ConstMatrixView panel);

/// Classical pivoted QR packaged as a Factorization.
Factorization cpqr_factorization(ConstMatrixView a);
/// SVD packaged as a Factorization: A V = U diag(d).
Factorization svd_factorization(ConstMatrixView a);

}  // namespace randqr
