#include <benchmark/benchmark.h>

#include <string>

#include "sheafcsp/affine.hpp"
#include "sheafcsp/cfi.hpp"
#include "sheafcsp/classical.hpp"
#include "sheafcsp/cohomology.hpp"
#include "sheafcsp/zext.hpp"

using namespace sheafcsp;

namespace {

const char* const kBases[] = {"k4", "prism", "petersen"};

std::pair<Structure, Structure> odd_tseitin(const std::string& base) {
  const OrderedGraph g = named_graph(base);
  std::vector<std::uint32_t> charge(g.vertex_count(), 0);
  charge[0] = 1;
  return affine_to_instance(tseitin_system(g, charge));
}

std::pair<Structure, Structure> cfi_pair(const std::string& base, std::uint32_t q) {
  const OrderedGraph g = named_graph(base);
  CfiSpec zero{g, q, std::vector<std::uint32_t>(g.edge_count(), 0)};
  CfiSpec twisted = zero;
  twisted.twist[0] = 1;
  return {cfi_structure(zero), cfi_structure(twisted)};
}

void BM_TseitinClassical(benchmark::State& state) {
  const std::string base = kBases[state.range(0)];
  auto [a, b] = odd_tseitin(base);
  state.SetLabel(base);
  for (auto _ : state) benchmark::DoNotOptimize(decide_k_consistency(a, b, 3));
}
BENCHMARK(BM_TseitinClassical)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_TseitinCohomological(benchmark::State& state) {
  const std::string base = kBases[state.range(0)];
  auto [a, b] = odd_tseitin(base);
  state.SetLabel(base);
  for (auto _ : state) benchmark::DoNotOptimize(decide_cohom_k_consistency(a, b, 3));
}
BENCHMARK(BM_TseitinCohomological)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

// One Zext sweep over the classical fixpoint, single-threaded.
void BM_ZextSweep(benchmark::State& state) {
  auto [a, b] = odd_tseitin(kBases[state.range(0)]);
  const SectionSet s = classical_fixpoint(enumerate_sections(a, b, 3, SectionKind::hom));
  state.counters["sections"] = static_cast<double>(s.total());
  for (auto _ : state) benchmark::DoNotOptimize(zext_flags(s, nullptr, 1));
}
BENCHMARK(BM_ZextSweep)->DenseRange(0, 1)->Unit(benchmark::kMillisecond);

void BM_CfiWl(benchmark::State& state) {
  const auto q = static_cast<std::uint32_t>(state.range(0));
  const auto k = static_cast<std::size_t>(state.range(1));
  auto [a, b] = cfi_pair("k4", q);
  for (auto _ : state) benchmark::DoNotOptimize(decide_k_wl(a, b, k));
}
BENCHMARK(BM_CfiWl)->Args({2, 2})->Args({2, 3})->Args({3, 2})->Unit(benchmark::kMillisecond);

void BM_CfiCohomWl(benchmark::State& state) {
  const auto q = static_cast<std::uint32_t>(state.range(0));
  const auto k = static_cast<std::size_t>(state.range(1));
  auto [a, b] = cfi_pair("k4", q);
  for (auto _ : state) benchmark::DoNotOptimize(decide_cohom_k_wl(a, b, k));
}
BENCHMARK(BM_CfiCohomWl)->Args({2, 2})->Args({2, 3})->Args({3, 2})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
