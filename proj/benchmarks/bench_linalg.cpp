#include <benchmark/benchmark.h>

#include <random>

#include "mrb/linalg.hpp"

using namespace mrb;

namespace {

Matrix random_matrix(std::size_t rows, std::size_t cols, std::size_t rank, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> num(-3, 3);
  Matrix a(rows, rank), b(rank, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < rank; ++c) a(r, c) = Scalar(num(rng), 1 + rng() % 3);
  for (std::size_t r = 0; r < rank; ++r)
    for (std::size_t c = 0; c < cols; ++c) b(r, c) = Scalar(num(rng), 1 + rng() % 3);
  return a * b;
}

void BM_Rank(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Matrix m = random_matrix(n, n, n / 2 + 1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_Rank)->Arg(8)->Arg(16)->Arg(32);

void BM_Nullspace(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Matrix m = random_matrix(n, n, n / 2 + 1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(nullspace_basis(m));
}
BENCHMARK(BM_Nullspace)->Arg(8)->Arg(16)->Arg(32);

}  // namespace
