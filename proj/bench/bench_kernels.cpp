// Serial reference kernels against their OpenMP versions.
#include <benchmark/benchmark.h>

#include "l1sec/analysis.hpp"
#include "l1sec/expanders.hpp"
#include "l1sec/kerdock.hpp"
#include "l1sec/kernels.hpp"
#include "l1sec/sensing.hpp"

using namespace l1sec;

namespace {

const BipartiteGraph& profile_graph() {
  static const BipartiteGraph g = build_sum_product(24).graph;
  return g;
}

const KernelBasis& spread_basis() {
  static const KernelBasis B = kernel_basis(local_subspace(16, 64).check);
  return B;
}

const SparseRows& measurement() {
  static const SparseRows M = local_subspace(64, 256).check.to_sparse();
  return M;
}

void BM_ProfileSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(kernels::profile_table_serial(profile_graph()));
}
void BM_ProfileOmp(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(kernels::profile_table_omp(profile_graph()));
}

void BM_SpreadSerial(benchmark::State& st) {
  const int s = static_cast<int>(st.range(0));
  for (auto _ : st)
    benchmark::DoNotOptimize(kernels::max_principal_eig_serial(spread_basis().basis, s));
}
void BM_SpreadOmp(benchmark::State& st) {
  const int s = static_cast<int>(st.range(0));
  for (auto _ : st)
    benchmark::DoNotOptimize(kernels::max_principal_eig_omp(spread_basis().basis, s));
}

void BM_CurveSerial(benchmark::State& st) {
  for (auto _ : st)
    benchmark::DoNotOptimize(recovery_curve_serial(measurement(), {4, 8, 16}, 8, 1));
}
void BM_CurveOmp(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(recovery_curve(measurement(), {4, 8, 16}, 8, 1));
}

}  // namespace

BENCHMARK(BM_ProfileSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProfileOmp)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SpreadSerial)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SpreadOmp)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CurveSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CurveOmp)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
