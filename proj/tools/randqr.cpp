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

// randqr: runs the truncation-error experiments and writes CSV.
//
//   randqr run --matrix fast --n 300 --block 50 --method m3 --q 2 --seed 1 --out DIR
//   randqr suite --out DIR
//   randqr gen --matrix gauss --n 6 --seed 1

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "randqr/block_factor.hpp"
#include "randqr/errors.hpp"
#include "randqr/harness.hpp"

namespace {

constexpr int kExitArgument = 2;
constexpr int kExitNumerical = 3;

using randqr::BlockConfig;
using randqr::MatrixKind;
using randqr::Method;

BlockConfig config_for(Method method, std::size_t b, std::size_t q,
                       std::optional<std::size_t> oversample) {
  BlockConfig cfg = randqr::method_config(method, b, q);
  if (oversample) cfg.sketch.oversample = *oversample;
  return cfg;
}

void run_cell(const randqr::TestMatrix& tm, MatrixKind kind, Method method, const BlockConfig& cfg,
              std::size_t q, std::uint64_t seed, bool all_ranks,
              const std::filesystem::path& out_dir) {
  randqr::RngState rng(randqr::pivot_seed(seed));
  const auto result = randqr::run_experiment(tm, method, cfg, rng, {all_ranks});
  const auto path = out_dir / randqr::csv_name(kind, method, q);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw randqr::ArgumentError("cannot write " + path.string());
  randqr::write_csv(out, result);
  std::cout << path.string() << "  max|R(k,k)/sigma_k - 1| = "
            << randqr::max_diag_deviation(result.diag) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized blocked QR and RRQR experiments"};
  app.require_subcommand(1);

  const std::vector<std::string> kinds{"fast", "gauss", "sshape"};
  const std::vector<std::string> methods{"cpqr", "svd", "m1", "m2", "m3"};

  std::string kind_arg;
  std::string method_arg;
  std::size_t n = 300;
  std::size_t block = 50;
  std::size_t q = 0;
  std::optional<std::size_t> oversample;
  std::uint64_t seed = 1;
  std::string out_dir;
  bool all_ranks = false;

  auto* run = app.add_subcommand("run", "Run one (matrix, method, q) cell");
  run->add_option("--matrix", kind_arg, "Test matrix")
      ->required()
      ->check(CLI::IsMember(kinds))
      ->option_text("fast|gauss|sshape");
  run->add_option("--method", method_arg, "Factorization method")
      ->required()
      ->check(CLI::IsMember(methods))
      ->option_text("cpqr|svd|m1|m2|m3");
  run->add_option("--n", n, "Matrix size")->check(CLI::Range(2, 100000));
  run->add_option("--block", block, "Block size b")->check(CLI::PositiveNumber);
  run->add_option("--q", q, "Power iterations")->check(CLI::Range(0, 2));
  run->add_option("--oversample", oversample, "Over-sampling (default 0, or b/2 for m3)");
  run->add_option("--seed", seed, "Seed");
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_flag("--all-k", all_ranks, "Report every rank k instead of multiples of b");

  auto* suite = app.add_subcommand("suite", "Run the full matrix x method x q grid");
  suite->add_option("--n", n, "Matrix size")->check(CLI::Range(2, 100000));
  suite->add_option("--block", block, "Block size b")->check(CLI::PositiveNumber);
  suite->add_option("--seed", seed, "Seed");
  suite->add_option("--out", out_dir, "Output directory")->required();
  suite->add_flag("--all-k", all_ranks, "Report every rank k instead of multiples of b");

  auto* gen = app.add_subcommand("gen", "Print a test matrix in the debug text format");
  gen->add_option("--matrix", kind_arg, "Test matrix")
      ->required()
      ->check(CLI::IsMember(kinds))
      ->option_text("fast|gauss|sshape");
  gen->add_option("--n", n, "Matrix size")->check(CLI::Range(2, 100000));
  gen->add_option("--seed", seed, "Seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitArgument;
  }

  const MatrixKind kind = randqr::parse_kind(kind_arg).value_or(MatrixKind::Fast);
  const Method method = randqr::parse_method(method_arg).value_or(Method::PermPivot);

  try {
    if (*gen) {
      randqr::RngState rng(seed);
      const auto tm = randqr::gen_matrix({kind, n, seed}, rng);
      randqr::write_matrix(std::cout, tm.a);
      return 0;
    }

    std::filesystem::create_directories(out_dir);
    if (*run) {
      randqr::RngState rng(seed);
      const auto tm = randqr::gen_matrix({kind, n, seed}, rng);
      run_cell(tm, kind, method, config_for(method, block, q, oversample), q, seed, all_ranks,
               out_dir);
      return 0;
    }

    std::optional<randqr::TestMatrix> tm;
    std::optional<MatrixKind> current;
    for (const auto& cell : randqr::suite_grid()) {
      if (current != cell.kind) {
        randqr::RngState rng(seed);
        tm = randqr::gen_matrix({cell.kind, n, seed}, rng);
        current = cell.kind;
      }
      run_cell(*tm, cell.kind, cell.method, config_for(cell.method, block, cell.q, std::nullopt),
               cell.q, seed, all_ranks, out_dir);
    }
    return 0;
  } catch (const randqr::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "argument error: " << e.what() << '\n';
    return kExitArgument;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "argument error: " << e.what() << '\n';
    return kExitArgument;
  }
}
