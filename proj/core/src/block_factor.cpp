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

#include "randqr/block_factor.hpp"

#include <algorithm>
#include <string>

#include "randqr/errors.hpp"
#include "randqr/svd.hpp"

namespace randqr {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_shape(ConstMatrixView a, const BlockConfig& cfg) {
  if (a.rows < a.cols) {
    throw DimensionError("block factorization needs rows >= cols, got " + std::to_string(a.rows) +
                         "x" + std::to_string(a.cols));
  }
  if (cfg.block == 0 || cfg.block > a.cols) {
    throw ArgumentError("block size " + std::to_string(cfg.block) + " outside [1, " +
                        std::to_string(a.cols) + "]");
  }
}

// Rows [r0, m) of columns [c0, c0 + w) below the diagonal block become exact
// zeros; the diagonal block itself is overwritten by `diag_block`.
void write_panel(Matrix& work, std::size_t c0, ConstMatrixView diag_block) {
  const std::size_t w = diag_block.cols;
  work.block(c0, c0, w, w).assign(diag_block);
  for (std::size_t j = c0; j < c0 + w; ++j) {
    for (std::size_t i = j + 1; i < c0 + w; ++i) work(i, j) = 0.0;
    for (std::size_t i = c0 + w; i < work.rows(); ++i) work(i, j) = 0.0;
  }
}

struct PanelStep {
  std::vector<PlacedTransform> q;
  PlacedTransform p;
};

// Factors work(c0:m, c0:c0+w) and pushes the left transform through the
// trailing columns and the right transform through the rows above.
PanelStep factor_panel(Matrix& work, std::size_t c0, std::size_t w, bool rrqr) {
  const std::size_t m = work.rows();
  const std::size_t n = work.cols();
  const std::size_t mt = m - c0;
  const ConstMatrixView panel = work.block(c0, c0, mt, w);
  const MatrixView trailing = work.block(c0, c0 + w, mt, n - c0 - w);
  const MatrixView above = work.block(0, c0, c0, w);

  PanelStep step;
  if (!rrqr) {
    QRResult qr = qr_tall_pivoted(panel);
    WYFactor qt = qr.q();
    apply_wy_left(qt, trailing, /*transposed=*/true);
    permute_columns_in_place(above, *qr.perm);
    write_panel(work, c0, qr.r);
    step.q.push_back({c0, ReflectorProduct{std::move(qt)}});
    step.p = {c0, Permutation{std::move(*qr.perm)}};
    return step;
  }

  PanelSvd ps = panel_svd(panel);
  WYFactor qt = ps.q();
  apply_wy_left(qt, trailing, /*transposed=*/true);
  if (trailing.cols > 0) {
    const MatrixView top = trailing.block(0, 0, w, trailing.cols);
    Matrix rotated(w, trailing.cols);
    gemm(Op::Trans, Op::None, 1.0, ps.u_small, top, 0.0, rotated);
    top.assign(rotated);
  }
  if (c0 > 0) {
    Matrix rotated(c0, w);
    gemm(Op::None, Op::None, 1.0, above, ps.v, 0.0, rotated);
    above.assign(rotated);
  }
  write_panel(work, c0, Matrix::diagonal(ps.d));
  step.q.push_back({c0, ReflectorProduct{std::move(qt)}});
  step.q.push_back({c0, DenseOrthogonal{std::move(ps.u_small)}});
  step.p = {c0, DenseOrthogonal{std::move(ps.v)}};
  return step;
}

Factorization blocked_sweep(ConstMatrixView a, const BlockConfig& cfg, RngState& rng,
                            const PanelObserver& observer, Method method) {
  check_shape(a, cfg);
  const std::size_t m = a.rows;
  const std::size_t n = a.cols;
  const std::size_t b = cfg.block;
  SketchConfig sketch = cfg.sketch;
  sketch.block = b;
  if (n > b) sketch.validate(n);

  Factorization f;
  f.m = m;
  f.n = n;
  f.b = b;
  f.method = method;

  Matrix work(a);
  std::size_t c0 = 0;
  std::size_t panel = 0;
  while (n - c0 > b) {
    const std::size_t nt = n - c0;
    // A ragged tail can leave fewer than b + r trailing columns.
    SketchConfig panel_sketch = sketch;
    panel_sketch.oversample = std::min(sketch.oversample, nt - b);
    const Matrix y = build_sketch(work.block(c0, c0, m - c0, nt), panel_sketch, rng);
    const MatrixView cols = work.block(0, c0, m, nt);
    if (cfg.pivot_kind == PivotKind::Permutation && !cfg.rrqr) {
      Permutation p = select_pivot_permutation(y, b);
      permute_columns_in_place(cols, p.order);
      f.p_transforms.push_back({c0, std::move(p)});
    } else {
      ReflectorProduct s = select_pivot_reflectors(y, b);
      apply_wy_right(cols, s.u);
      f.p_transforms.push_back({c0, std::move(s)});
    }

    PanelStep step = factor_panel(work, c0, b, cfg.rrqr);
    for (auto& t : step.q) f.q_transforms.push_back(std::move(t));
    f.p_transforms.push_back(std::move(step.p));
    if (observer) observer(panel, work);
    c0 += b;
    ++panel;
  }

  PanelStep last = factor_panel(work, c0, n - c0, cfg.rrqr);
  for (auto& t : last.q) f.q_transforms.push_back(std::move(t));
  f.p_transforms.push_back(std::move(last.p));
  if (observer) observer(panel, work);

  f.r = Matrix(work.block(0, 0, n, n));
  return f;
}

}  // namespace

std::string_view method_name(Method m) {
  switch (m) {
    case Method::PermPivot: return "m1";
    case Method::ReflectorPivot: return "m2";
    case Method::RRQR: return "m3";
    case Method::ColumnPivoted: return "cpqr";
    case Method::SVD: return "svd";
  }
  return "unknown";
}

BlockConfig BlockConfig::method1(std::size_t b) {
  return {b, SketchConfig::make(b, 0, 0), PivotKind::Permutation, false};
}

BlockConfig BlockConfig::method2(std::size_t b, std::size_t q) {
  return {b, SketchConfig::make(b, 0, q), PivotKind::Reflectors, false};
}

BlockConfig BlockConfig::method3(std::size_t b, std::size_t q) {
  return {b, SketchConfig::make(b, b / 2, q), PivotKind::Reflectors, true};
}

std::size_t PlacedTransform::dim() const {
  return std::visit(Overloaded{
                        [](const Permutation& p) { return p.order.size(); },
                        [](const ReflectorProduct& r) { return r.u.dim(); },
                        [](const DenseOrthogonal& d) { return d.m.rows(); },
                    },
                    t);
}

void apply_left(const PlacedTransform& t, MatrixView a, bool transposed) {
  const std::size_t d = t.dim();
  if (t.offset + d > a.rows) throw DimensionError("apply_left: transform exceeds rows");
  const MatrixView rows = a.block(t.offset, 0, d, a.cols);
  std::visit(Overloaded{
                 [&](const Permutation& p) {
                   // (P x)(order[j]) = x(j).
                   const Matrix src(rows);
                   for (std::size_t j = 0; j < d; ++j)
                     for (std::size_t c = 0; c < a.cols; ++c) {
                       if (transposed) {
                         rows(j, c) = src(p.order[j], c);
                       } else {
                         rows(p.order[j], c) = src(j, c);
                       }
                     }
                 },
                 [&](const ReflectorProduct& r) { apply_wy_left(r.u, rows, transposed); },
                 [&](const DenseOrthogonal& m) {
                   const Matrix src(rows);
                   gemm(transposed ? Op::Trans : Op::None, Op::None, 1.0, m.m, src, 0.0, rows);
                 },
             },
             t.t);
}

void apply_right(MatrixView a, const PlacedTransform& t) {
  const std::size_t d = t.dim();
  if (t.offset + d > a.cols) throw DimensionError("apply_right: transform exceeds columns");
  const MatrixView cols = a.block(0, t.offset, a.rows, d);
  std::visit(Overloaded{
                 [&](const Permutation& p) { permute_columns_in_place(cols, p.order); },
                 [&](const ReflectorProduct& r) { apply_wy_right(cols, r.u); },
                 [&](const DenseOrthogonal& m) {
                   const Matrix src(cols);
                   gemm(Op::None, Op::None, 1.0, src, m.m, 0.0, cols);
                 },
             },
             t.t);
}

Matrix expand_q(const Factorization& f) {
  note_dense_expansion();
  Matrix e(f.m, f.n);
  for (std::size_t j = 0; j < f.n; ++j) e(j, j) = 1.0;
  for (auto it = f.q_transforms.rbegin(); it != f.q_transforms.rend(); ++it) apply_left(*it, e);
  return e;
}

Matrix expand_p(const Factorization& f) {
  note_dense_expansion();
  Matrix e = Matrix::identity(f.n);
  for (const auto& t : f.p_transforms) apply_right(e, t);
  return e;
}

Factorization block_qr(ConstMatrixView a, const BlockConfig& cfg, RngState& rng,
                       const PanelObserver& observer) {
  BlockConfig c = cfg;
  c.rrqr = false;
  return blocked_sweep(a, c, rng, observer,
                       c.pivot_kind == PivotKind::Permutation ? Method::PermPivot
                                                              : Method::ReflectorPivot);
}

Factorization block_rrqr(ConstMatrixView a, const BlockConfig& cfg, RngState& rng,
                         const PanelObserver& observer) {
  BlockConfig c = cfg;
  c.rrqr = true;
  c.pivot_kind = PivotKind::Reflectors;
  return blocked_sweep(a, c, rng, observer, Method::RRQR);
}

Matrix PanelSvd::u_thin() const {
  const std::size_t b = d.size();
  Matrix u(rows, b);
  u.block(0, 0, b, b).assign(u_small);
  apply_wy_left(q(), u.view());
  return u;
}

PanelSvd panel_svd(ConstMatrixView panel) {
  if (panel.rows < panel.cols) {
    throw DimensionError("panel_svd: panel is " + std::to_string(panel.rows) + "x" +
                         std::to_string(panel.cols) + ", needs rows >= cols");
  }
  QRResult qr = qr_unpivoted(panel);
  SVDResult s = svd_full(qr.r);
  return {panel.rows, std::move(qr.reflectors), std::move(s.u), std::move(s.d), std::move(s.v)};
}

Factorization cpqr_factorization(ConstMatrixView a) {
  if (a.rows < a.cols) throw DimensionError("cpqr_factorization: needs rows >= cols");
  QRResult qr = qr_column_pivoted(a);
  Factorization f;
  f.m = a.rows;
  f.n = a.cols;
  f.b = 1;
  f.method = Method::ColumnPivoted;
  f.q_transforms.push_back({0, ReflectorProduct{qr.q()}});
  f.p_transforms.push_back({0, Permutation{std::move(*qr.perm)}});
  f.r = std::move(qr.r);
  return f;
}

Factorization svd_factorization(ConstMatrixView a) {
  if (a.rows < a.cols) throw DimensionError("svd_factorization: needs rows >= cols");
  PanelSvd ps = panel_svd(a);
  Factorization f;
  f.m = a.rows;
  f.n = a.cols;
  f.b = a.cols;
  f.method = Method::SVD;
  f.r = Matrix::diagonal(ps.d);
  f.q_transforms.push_back({0, ReflectorProduct{ps.q()}});
  f.q_transforms.push_back({0, DenseOrthogonal{std::move(ps.u_small)}});
  f.p_transforms.push_back({0, DenseOrthogonal{std::move(ps.v)}});
  return f;
}

}  // namespace randqr
