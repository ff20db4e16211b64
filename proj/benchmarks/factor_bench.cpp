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

#include <benchmark/benchmark.h>

#include "randqr/block_factor.hpp"
#include "randqr/harness.hpp"
#include "randqr/svd.hpp"

namespace {

using namespace randqr;

Matrix input(std::size_t n) {
  RngState rng(1);
  return gen_matrix({MatrixKind::Fast, n, 1}, rng).a;
}

void BM_ColumnPivotedQR(benchmark::State& state) {
  const Matrix a = input(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qr_column_pivoted(a));
}

void BM_BlockQRPermutation(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix a = input(n);
  for (auto _ : state) {
    RngState rng(2);
    benchmark::DoNotOptimize(block_qr(a, BlockConfig::method1(n / 6), rng));
  }
}

void BM_BlockQRReflectors(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix a = input(n);
  for (auto _ : state) {
    RngState rng(2);
    benchmark::DoNotOptimize(block_qr(a, BlockConfig::method2(n / 6, 2), rng));
  }
}

void BM_BlockRRQR(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix a = input(n);
  for (auto _ : state) {
    RngState rng(2);
    benchmark::DoNotOptimize(block_rrqr(a, BlockConfig::method3(n / 6, 2), rng));
  }
}

void BM_SvdValues(benchmark::State& state) {
  const Matrix a = input(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(svd_values(a));
}

BENCHMARK(BM_ColumnPivotedQR)->Arg(120)->Arg(300)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BlockQRPermutation)->Arg(120)->Arg(300)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BlockQRReflectors)->Arg(120)->Arg(300)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BlockRRQR)->Arg(120)->Arg(300)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SvdValues)->Arg(120)->Arg(300)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
