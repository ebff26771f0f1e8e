#include <benchmark/benchmark.h>

#include <map>

#include "sheafcsp/diophantine.hpp"
#include "sheafcsp/hnf.hpp"
#include "sheafcsp/random_instances.hpp"
#include "sheafcsp/sparse_kernel.hpp"

using namespace sheafcsp;

namespace {

IntMatrix dense(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  Rng rng(seed);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = static_cast<long>(rng.below(21)) - 10;
  }
  return m;
}

void BM_HnfDense(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const IntMatrix m = dense(n, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(hermite_normal_form(m));
}
BENCHMARK(BM_HnfDense)->Arg(10)->Arg(20)->Arg(35)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_HermiteBasisWide(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const IntMatrix m = dense(n / 2, n, n + 1);
  for (auto _ : state) benchmark::DoNotOptimize(hermite_basis(m));
}
BENCHMARK(BM_HermiteBasisWide)->Arg(20)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_Diophantine(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const IntMatrix m = dense(n, n + 2, 3 * n);
  std::vector<Integer> x(n + 2, 1);
  const std::vector<Integer> b = m.apply(x);
  for (auto _ : state) benchmark::DoNotOptimize(solve_diophantine(m, b));
}
BENCHMARK(BM_Diophantine)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

// Sparse ±1 rows, the shape of compatibility systems.
void BM_SparseKernel(benchmark::State& state) {
  const auto cols = static_cast<std::size_t>(state.range(0));
  Rng rng(cols);
  std::vector<SparseVec> rows;
  for (std::size_t r = 0; r < cols * 3 / 4; ++r) {
    std::map<std::uint32_t, Integer> entries;
    for (int t = 0; t < 4; ++t) {
      entries[static_cast<std::uint32_t>(rng.below(cols))] = rng.chance(1, 2) ? 1 : -1;
    }
    rows.emplace_back(entries.begin(), entries.end());
  }
  for (auto _ : state) benchmark::DoNotOptimize(integer_kernel(cols, rows));
}
BENCHMARK(BM_SparseKernel)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
