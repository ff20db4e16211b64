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

#include <array>
#include <cstddef>
#include <cstdint>

#include "randqr/matrix.hpp"

namespace randqr {

/// Reproducible random stream.
///
/// Generator: xoshiro256** with its 256-bit state expanded from the 64-bit
/// seed by four splitmix64 steps. Uniforms take the top 53 bits of a draw.
/// Normals use the cosine branch of Box-Muller: each normal consumes two
/// consecutive 64-bit draws u1, u2 and returns
///   sqrt(-2 ln((u1 + 1) / 2^53)) * cos(2 pi u2 / 2^53)
/// with u1, u2 shifted down to 53 bits. Nothing is cached between calls, so
/// the position in the stream is always 2 * (normals drawn).
class RngState {
 public:
  explicit RngState(std::uint64_t seed = 0);

  std::uint64_t seed() const { return seed_; }
  /// Number of normal draws taken so far.
  std::uint64_t normals_drawn() const { return normals_; }

  std::uint64_t next_u64();
  double uniform();  // [0, 1)
  double normal();   // N(0, 1)

  friend bool operator==(const RngState&, const RngState&) = default;

 private:
  std::uint64_t seed_;
  std::array<std::uint64_t, 4> s_;
  std::uint64_t normals_ = 0;
};

/// rows x cols matrix of i.i.d. standard normals, filled column by column.
/// Throws DimensionError on a zero dimension.
Matrix gaussian_matrix(std::size_t rows, std::size_t cols, RngState& rng);

}  // namespace randqr
