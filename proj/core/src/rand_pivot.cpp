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

#include "randqr/rand_pivot.hpp"

#include <string>

#include "randqr/errors.hpp"

namespace randqr {

SketchConfig SketchConfig::make(std::size_t block, std::size_t oversample, std::size_t power) {
  return {block, oversample, power, power >= 2};
}

void SketchConfig::validate(std::size_t cols) const {
  if (block == 0) throw ArgumentError("sketch: block size must be >= 1");
  if (width() > cols) {
    throw ArgumentError("sketch: block + oversample = " + std::to_string(width()) +
                        " exceeds the " + std::to_string(cols) + " columns being pivoted");
  }
}

Matrix orthonormalize_columns(ConstMatrixView m) {
  return wy_leading_columns(qr_unpivoted(m).q(), m.cols);
}

Matrix build_sketch(ConstMatrixView x, const SketchConfig& cfg, RngState& rng) {
  cfg.validate(x.cols);
  const bool orth = cfg.orthonormalize_between_powers;
  const Matrix omega = gaussian_matrix(x.rows, cfg.width(), rng);

  Matrix y = matmul_tn(x, omega);
  if (orth) y = orthonormalize_columns(y);
  for (std::size_t i = 0; i < cfg.power; ++i) {
    Matrix z = matmul(x, y);
    if (orth) z = orthonormalize_columns(z);
    y = matmul_tn(x, z);
    if (orth) y = orthonormalize_columns(y);
  }
  return y;
}

Permutation select_pivot_permutation(ConstMatrixView y, std::size_t b) {
  if (b == 0 || b > y.rows || b > y.cols) {
    throw ArgumentError("select_pivot_permutation: b = " + std::to_string(b) +
                        " incompatible with a " + std::to_string(y.rows) + "x" +
                        std::to_string(y.cols) + " sample");
  }
  const QRResult qr = qr_column_pivoted(transpose(y), b);
  const auto& full = *qr.perm;

  Permutation p;
  p.order.reserve(y.rows);
  std::vector<bool> chosen(y.rows, false);
  for (std::size_t j = 0; j < b; ++j) {
    p.order.push_back(full[j]);
    chosen[full[j]] = true;
  }
  for (std::size_t j = 0; j < y.rows; ++j)
    if (!chosen[j]) p.order.push_back(j);
  return p;
}

ReflectorProduct select_pivot_reflectors(ConstMatrixView y, std::size_t b) {
  if (b == 0 || b > y.rows || b > y.cols) {
    throw ArgumentError("select_pivot_reflectors: b = " + std::to_string(b) +
                        " incompatible with a " + std::to_string(y.rows) + "x" +
                        std::to_string(y.cols) + " sample");
  }
  QRResult qr = qr_unpivoted(y.block(0, 0, y.rows, b));
  while (qr.reflectors.size() < b) {
    qr.reflectors.push_back(Reflector{std::vector<double>(1, 0.0), qr.reflectors.size()});
  }
  return {qr.q()};
}

}  // namespace randqr
