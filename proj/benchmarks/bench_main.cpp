#include <benchmark/benchmark.h>

#include "sympidx/decompose.hpp"
#include "sympidx/exact.hpp"
#include "sympidx/index.hpp"
#include "sympidx/oracles.hpp"
#include "sympidx/r8.hpp"
#include "sympidx/random.hpp"

using namespace sympidx;

namespace {

IndexSeed fixed_seed(int n) {
  Rng rng(7);
  SeedOptions so;
  so.n_min = so.n_max = n;
  return random_seed(rng, so);
}

void BM_IterateIndex(benchmark::State& st) {
  const IndexSeed s = fixed_seed(4);
  long long m = 1;
  for (auto _ : st) {
    benchmark::DoNotOptimize(iterate_index(s, m));
    m = m % 100000 + 1;
  }
}
BENCHMARK(BM_IterateIndex);

void BM_IterateTable(benchmark::State& st) {
  const IndexSeed s = fixed_seed(4);
  for (auto _ : st) benchmark::DoNotOptimize(iterate_table(s, st.range(0)));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_IterateTable)->Range(16, 4096)->Complexity();

// one cell of the R8 grid: a single i(y) value over all shapes and angle draws
void BM_GridScanCell(benchmark::State& st) {
  Lemma31Options opt;
  opt.i_min = opt.i_max = -4;
  opt.m_max = st.range(0);
  opt.angle_samples = 10;
  for (auto _ : st) benchmark::DoNotOptimize(lemma31_scan(opt));
}
BENCHMARK(BM_GridScanCell)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_NullityOracle(benchmark::State& st) {
  const IndexSeed s = fixed_seed(static_cast<int>(st.range(0)));
  const Matrix m = realize_seed(s).matrix();
  long long p = 1;
  for (auto _ : st) {
    benchmark::DoNotOptimize(nullity_oracle(m, p));
    p = p % 20 + 1;
  }
}
BENCHMARK(BM_NullityOracle)->DenseRange(1, 4)->Unit(benchmark::kMicrosecond);

void BM_CrossingIndex(benchmark::State& st) {
  const IndexSeed s = fixed_seed(static_cast<int>(st.range(0)));
  const CrossingCalibration cal = calibrate_crossing(reference_seed());
  const SampledPath path = build_path(s, 64, 20);
  for (auto _ : st) benchmark::DoNotOptimize(crossing_index_series(path, cal));
}
BENCHMARK(BM_CrossingIndex)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_Decompose(benchmark::State& st) {
  Rng rng(11);
  SeedOptions so;
  so.n_min = so.n_max = static_cast<int>(st.range(0));
  const IndexSeed s = random_seed(rng, so);
  const Matrix p = random_symplectic(rng, s.n, 100);
  const Matrix m = p.inverse() * realize_seed(s).matrix() * p;
  for (auto _ : st) benchmark::DoNotOptimize(decompose(m, DecomposeOptions{}));
}
BENCHMARK(BM_Decompose)->DenseRange(1, 4)->Unit(benchmark::kMicrosecond);

void BM_SurdFloor(benchmark::State& st) {
  // m·(a + b√2 + c√3) with large m stresses the sign refinement
  const SurdSum x = SurdSum(mpq_class(1, 7)) + SurdSum::sqrt_of(2) * mpq_class(3, 11) -
                    SurdSum::sqrt_of(3) * mpq_class(5, 13);
  long long m = 1;
  for (auto _ : st) {
    benchmark::DoNotOptimize((x * mpq_class(static_cast<long>(m))).floor());
    m = m % 1000000 + 1;
  }
}
BENCHMARK(BM_SurdFloor)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
