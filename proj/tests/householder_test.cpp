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

#include <gtest/gtest.h>

#include <cmath>

#include "randqr/errors.hpp"
#include "randqr/householder.hpp"
#include "test_util.hpp"

namespace randqr {
namespace {

using testing::dense_product;
using testing::dense_reflector;
using testing::max_abs_diff;
using testing::permutation_matrix;
using testing::random_matrix;
using testing::strictly_lower_is_zero;

std::vector<double> apply_copy(const Reflector& h, std::vector<double> x) {
  h.apply(x);
  return x;
}

TEST(Reflector, ThreeFour) {
  const std::vector<double> a{3, 4};
  const auto [h, beta] = reflector_from_vector(a);
  EXPECT_DOUBLE_EQ(beta, -5.0);
  const auto ha = apply_copy(h, a);
  EXPECT_NEAR(ha[0], -5.0, 5e-14);
  EXPECT_NEAR(ha[1], 0.0, 5e-14);
}

TEST(Reflector, UnitVectorFlipsSign) {
  const auto [h, beta] = reflector_from_vector(std::vector<double>{1, 0, 0});
  EXPECT_EQ(beta, -1.0);
  EXPECT_EQ(apply_copy(h, {1, 0, 0}), (std::vector<double>{-1, 0, 0}));
}

TEST(Reflector, ZeroVectorGivesIdentity) {
  const auto [h, beta] = reflector_from_vector(std::vector<double>{0, 0});
  EXPECT_EQ(beta, 0.0);
  EXPECT_TRUE(h.is_identity());
  EXPECT_EQ(apply_copy(h, {2, -1}), (std::vector<double>{2, -1}));
}

TEST(Reflector, LeadingZeroUsesPositiveSign) {
  const auto [h, beta] = reflector_from_vector(std::vector<double>{0, 3, 4});
  EXPECT_DOUBLE_EQ(beta, -5.0);
  const auto ha = apply_copy(h, {0, 3, 4});
  EXPECT_NEAR(ha[0], -5.0, 5e-14);
}

TEST(Reflector, UnitNormAndInvolution) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Matrix a = random_matrix(9, 2, seed);
    const auto [h, beta] = reflector_from_vector(a.col(0));
    double nv = 0.0;
    for (double x : h.v) nv += x * x;
    EXPECT_NEAR(std::sqrt(nv), 1.0, 1e-14);

    std::vector<double> x(a.col(1).begin(), a.col(1).end());
    const auto twice = apply_copy(h, apply_copy(h, x));
    double nx = 0.0;
    for (double v : x) nx += v * v;
    for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(twice[i], x[i], 1e-13 * std::sqrt(nx));

    const auto ha = apply_copy(h, std::vector<double>(a.col(0).begin(), a.col(0).end()));
    EXPECT_NEAR(ha[0], beta, 1e-14 * std::abs(beta));
    for (std::size_t i = 1; i < ha.size(); ++i) EXPECT_NEAR(ha[i], 0.0, 1e-14 * std::abs(beta));
  }
}

TEST(WYAccumulate, EmptyIsIdentity) {
  const WYFactor u = wy_accumulate({}, 4);
  EXPECT_EQ(u.count(), 0u);
  EXPECT_EQ(u.dim(), 4u);
  const Matrix a = random_matrix(4, 3, 1);
  EXPECT_EQ(wy_multiply_left(u, a), a);
  EXPECT_EQ(wy_to_dense(u), Matrix::identity(4));
}

TEST(WYAccumulate, SingleReflector) {
  const auto h = reflector_from_vector(std::vector<double>{1, 2, 2}, 1).reflector;
  const std::vector<Reflector> hs{h};
  EXPECT_LE(max_abs_diff(wy_to_dense(wy_accumulate(hs, 4)), dense_reflector(h, 4)), 1e-16);
}

TEST(WYAccumulate, TwoRandomReflectorsMatchDenseProduct) {
  const Matrix a = random_matrix(6, 1, 2);
  const Matrix b = random_matrix(4, 1, 3);
  const std::vector<Reflector> hs{reflector_from_vector(a.col(0), 0).reflector,
                                  reflector_from_vector(b.col(0), 2).reflector};
  EXPECT_LE(max_abs_diff(wy_to_dense(wy_accumulate(hs, 6)), dense_product(hs, 6)), 1e-13);
}

TEST(WYAccumulate, ManyReflectorsOrthonormalAndMatchDense) {
  const std::size_t n = 40;
  const QRResult qr = qr_unpivoted(random_matrix(n, 25, 4));
  const WYFactor u = qr.q();
  const Matrix dense = wy_to_dense(u);
  EXPECT_LE(max_abs_diff(dense, dense_product(qr.reflectors, n)), 1e-12);
  EXPECT_LE(orthogonality_error(dense), 1e-12 * std::sqrt(static_cast<double>(n)));
}

TEST(WYAccumulate, ReflectorPastDimensionThrows) {
  const std::vector<Reflector> hs{reflector_from_vector(std::vector<double>{1, 1, 1}, 2).reflector};
  EXPECT_THROW(wy_accumulate(hs, 4), DimensionError);
}

TEST(ApplyWY, AgreesWithDenseOracle) {
  const std::size_t n = 8;
  const QRResult qr = qr_unpivoted(random_matrix(n, 5, 5));
  const Matrix u = dense_product(qr.reflectors, n);
  const WYFactor wy = qr.q();
  const Matrix a = random_matrix(n, n, 6);
  EXPECT_LE(max_abs_diff(wy_multiply_left(wy, a), matmul(u, a)), 1e-13);
  EXPECT_LE(max_abs_diff(wy_multiply_left(wy, a, true), matmul_tn(u, a)), 1e-13);
  EXPECT_LE(max_abs_diff(wy_multiply_right(a, wy), matmul(a, u)), 1e-13);
  EXPECT_LE(max_abs_diff(wy_multiply_right(a, wy, true), matmul_nt(a, u)), 1e-13);
}

TEST(ApplyWY, RoundTripRestores) {
  const QRResult qr = qr_unpivoted(random_matrix(15, 6, 7));
  const WYFactor wy = qr.q();
  const Matrix a = random_matrix(15, 9, 8);
  const Matrix back = wy_multiply_left(wy, wy_multiply_left(wy, a), true);
  EXPECT_LE(frobenius_norm(back - a), 1e-12 * frobenius_norm(a));
}

TEST(ApplyWY, DimensionMismatchThrows) {
  const WYFactor wy = qr_unpivoted(random_matrix(5, 2, 9)).q();
  EXPECT_THROW(wy_multiply_left(wy, Matrix(4, 3)), DimensionError);
  EXPECT_THROW(wy_multiply_right(Matrix(3, 4), wy), DimensionError);
}

TEST(ApplyWY, NoDenseExpansion) {
  const WYFactor wy = qr_unpivoted(random_matrix(30, 4, 10)).q();
  const auto before = dense_expansion_count();
  Matrix a = random_matrix(30, 30, 11);
  apply_wy_left(wy, a.view(), true);
  apply_wy_right(a.view(), wy);
  EXPECT_EQ(dense_expansion_count(), before);
}

TEST(QRUnpivoted, ThreeFourColumn) {
  const QRResult qr = qr_unpivoted(Matrix{{3}, {4}});
  ASSERT_EQ(qr.r.rows(), 1u);
  EXPECT_DOUBLE_EQ(qr.r(0, 0), -5.0);
  const Matrix q = wy_leading_columns(qr.q(), 1);
  EXPECT_LE(max_abs_diff(matmul(q, qr.r), Matrix{{3}, {4}}), 1e-15);
  EXPECT_FALSE(qr.perm.has_value());
}

TEST(QRUnpivoted, UpperTriangularInputKeepsMagnitudes) {
  const Matrix a{{2, 1, -1}, {0, 3, 4}, {0, 0, 5}};
  const QRResult qr = qr_unpivoted(a);
  const Matrix q = wy_to_dense(qr.q());
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(std::abs(q(i, i)), 1.0, 1e-15);
    const double sign = q(i, i);
    for (std::size_t j = 0; j < 3; ++j) {
      if (i != j) EXPECT_NEAR(q(i, j), 0.0, 1e-15);
      EXPECT_NEAR(qr.r(i, j), sign * a(i, j), 1e-14);
    }
  }
}

TEST(QRUnpivoted, HandOracle3x3) {
  // Columns (1,2,2), (0,3,0), (0,0,4): first reflector gives beta = -3 and
  // H = I - (1/12)(4,2,2)(4,2,2)^T by hand; R row 1 is (-3, -2, -8/3).
  const Matrix a{{1, 0, 0}, {2, 3, 0}, {2, 0, 4}};
  const QRResult qr = qr_unpivoted(a);
  EXPECT_NEAR(qr.r(0, 0), -3.0, 1e-13);
  EXPECT_NEAR(qr.r(0, 1), -2.0, 1e-13);
  EXPECT_NEAR(qr.r(0, 2), -8.0 / 3.0, 1e-13);
  const Matrix q = wy_leading_columns(qr.q(), 3);
  EXPECT_LE(max_abs_diff(matmul(q, qr.r), a), 1e-13);
}

TEST(QRUnpivoted, RandomReconstructionAndOrthogonality) {
  const Matrix a = random_matrix(20, 10, 12);
  const QRResult qr = qr_unpivoted(a);
  const Matrix q = wy_leading_columns(qr.q(), 10);
  EXPECT_TRUE(strictly_lower_is_zero(qr.r));
  EXPECT_LE(frobenius_norm(matmul(q, qr.r) - a), 1e-12 * frobenius_norm(a));
  EXPECT_LE(orthogonality_error(wy_to_dense(qr.q())), 1e-12);
  EXPECT_NEAR(std::abs(qr.r(0, 0)), column_norms(a)[0], 1e-13);
}

TEST(QRUnpivoted, WideInputThrows) {
  EXPECT_THROW(qr_unpivoted(Matrix(2, 3)), DimensionError);
}

TEST(QRColumnPivoted, HandExample) {
  const QRResult qr = qr_column_pivoted(Matrix{{0, 2}, {0, 1}});
  EXPECT_EQ(*qr.perm, (std::vector<std::size_t>{1, 0}));
  EXPECT_NEAR(std::abs(qr.r(0, 0)), std::sqrt(5.0), 1e-15);
  EXPECT_EQ(qr.r(1, 1), 0.0);
}

TEST(QRColumnPivoted, IdentityKeepsOrder) {
  const QRResult qr = qr_column_pivoted(Matrix::identity(4));
  EXPECT_EQ(*qr.perm, (std::vector<std::size_t>{0, 1, 2, 3}));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(std::abs(qr.r(i, j)), i == j ? 1.0 : 0.0);
}

TEST(QRColumnPivoted, TiesGoToLowestIndex) {
  const Matrix a{{1, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 0}};
  const QRResult qr = qr_column_pivoted(a, 1);
  EXPECT_EQ((*qr.perm)[0], 0u);
}

TEST(QRColumnPivoted, DiagonalNonIncreasing) {
  const Matrix a = random_matrix(30, 30, 13);
  const QRResult qr = qr_column_pivoted(a);
  for (std::size_t k = 1; k < 30; ++k) {
    EXPECT_LE(std::abs(qr.r(k, k)), std::abs(qr.r(k - 1, k - 1)) * (1 + 1e-14)) << "k=" << k;
  }
}

TEST(QRColumnPivoted, PartialStepsKeepTrailingBlock) {
  const Matrix a = random_matrix(12, 9, 14);
  const QRResult qr = qr_column_pivoted(a, 4);
  ASSERT_EQ(qr.r.rows(), 4u);
  ASSERT_EQ(qr.trailing.rows(), 8u);
  ASSERT_EQ(qr.trailing.cols(), 5u);
  EXPECT_EQ(qr.reflectors.size(), 4u);
  // Rebuild the full working matrix and check A P = Q [R; 0 T].
  Matrix full(12, 9);
  full.block(0, 0, 4, 9).assign(qr.r);
  full.block(4, 4, 8, 5).assign(qr.trailing);
  const Matrix ap = matmul(a, permutation_matrix(*qr.perm));
  EXPECT_LE(frobenius_norm(wy_multiply_left(qr.q(), full) - ap), 1e-12 * frobenius_norm(a));
  // Remaining columns of the trailing block are no larger than the last pivot.
  for (double c : column_norms(qr.trailing)) EXPECT_LE(c, std::abs(qr.r(3, 3)) * (1 + 1e-14));
}

TEST(QRColumnPivoted, StepsOutOfRangeThrows) {
  EXPECT_THROW(qr_column_pivoted(Matrix(4, 3), 4), ArgumentError);
}

TEST(QRTallPivoted, SingleColumnMatchesUnpivoted) {
  const Matrix a = random_matrix(10, 1, 15);
  const QRResult t = qr_tall_pivoted(a);
  const QRResult u = qr_unpivoted(a);
  EXPECT_EQ(t.r, u.r);
  EXPECT_EQ(*t.perm, (std::vector<std::size_t>{0}));
  EXPECT_LE(max_abs_diff(wy_to_dense(t.q()), wy_to_dense(u.q())), 0.0);
}

TEST(QRTallPivoted, DiagonalMatchesDirectPivotedQR) {
  const Matrix a = random_matrix(40, 5, 16);
  const QRResult t = qr_tall_pivoted(a);
  const QRResult d = qr_column_pivoted(a);
  EXPECT_EQ(*t.perm, *d.perm);
  for (std::size_t k = 0; k < 5; ++k) EXPECT_NEAR(std::abs(t.r(k, k)), std::abs(d.r(k, k)), 1e-12);
}

TEST(QRTallPivoted, DuplicatedColumnsGiveZeroPivot) {
  Matrix a = random_matrix(20, 4, 17);
  std::ranges::copy(a.col(1), a.col(3).begin());
  const QRResult t = qr_tall_pivoted(a);
  EXPECT_LE(std::abs(t.r(3, 3)), 1e-12 * frobenius_norm(a));
}

TEST(QRProperties, ReconstructionOn50x30) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const Matrix a = random_matrix(50, 30, 200 + seed);
    const double tol_q = 1e-12 * std::sqrt(50.0);
    for (const QRResult& qr : {qr_unpivoted(a), qr_column_pivoted(a), qr_tall_pivoted(a)}) {
      EXPECT_TRUE(strictly_lower_is_zero(qr.r));
      const Matrix q = wy_to_dense(qr.q());
      EXPECT_LE(orthogonality_error(q), tol_q);
      Matrix r_full(50, 30);
      r_full.block(0, 0, 30, 30).assign(qr.r);
      const Matrix ap = qr.perm ? matmul(a, permutation_matrix(*qr.perm)) : a;
      EXPECT_LE(frobenius_norm(matmul(q, r_full) - ap), 1e-12 * frobenius_norm(a));
    }
  }
}

}  // namespace
}  // namespace randqr
