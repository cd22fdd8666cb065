#include <benchmark/benchmark.h>

#include "bfly/analysis.hpp"
#include "bfly/butterfly.hpp"
#include "bfly/equivalence.hpp"

namespace {

bfly::Sbox gamma_butterfly(unsigned n, unsigned i) {
  const bfly::QuadExt ext{bfly::FieldSpec(n)};
  const auto m = bfly::gamma_members(ext, i);
  return bfly::closed_butterfly(bfly::ButterflyParams(ext, i, m.back().first, m.back().second));
}

void BM_Ddt(benchmark::State& st) {
  const auto s = gamma_butterfly(static_cast<unsigned>(st.range(0)), 1);
  for (auto _ : st) benchmark::DoNotOptimize(bfly::differential_uniformity(s));
}
BENCHMARK(BM_Ddt)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_BctInverse(benchmark::State& st) {
  const auto s = gamma_butterfly(static_cast<unsigned>(st.range(0)), 1);
  for (auto _ : st) benchmark::DoNotOptimize(bfly::bct_via_inverse(s));
}
BENCHMARK(BM_BctInverse)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_BctSystem(benchmark::State& st) {
  const auto s = gamma_butterfly(3, 1);
  for (auto _ : st) benchmark::DoNotOptimize(bfly::bct_via_system(s));
}
BENCHMARK(BM_BctSystem)->Unit(benchmark::kMillisecond);

void BM_Walsh(benchmark::State& st) {
  const auto s = gamma_butterfly(static_cast<unsigned>(st.range(0)), 1);
  for (auto _ : st) benchmark::DoNotOptimize(bfly::walsh_nonlinearity(s));
}
BENCHMARK(BM_Walsh)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_Criterion(benchmark::State& st) {
  const auto s = gamma_butterfly(static_cast<unsigned>(st.range(0)), 1);
  for (auto _ : st) benchmark::DoNotOptimize(bfly::quadratic_boomerang4_check(s));
}
BENCHMARK(BM_Criterion)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_GoldSearch(benchmark::State& st) {
  const bfly::QuadExt ext{bfly::FieldSpec(static_cast<unsigned>(st.range(0)))};
  const auto m = bfly::gamma_members(ext, 1);
  const bfly::ButterflyParams p(ext, 1, m.back().first, m.back().second);
  for (auto _ : st) benchmark::DoNotOptimize(bfly::find_gold_equivalence(p));
}
BENCHMARK(BM_GoldSearch)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
