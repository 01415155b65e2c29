// Serial reference kernels against the OpenMP map-reduce kernels, plus the
// eigensolver hot path they share.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "sepvol/bounds.hpp"
#include "sepvol/experiments.hpp"
#include "sepvol/matcore.hpp"
#include "sepvol/randgen.hpp"
#include "sepvol/reference.hpp"

using namespace sepvol;

namespace {

constexpr std::uint64_t kSamples = 8 * kChunkSize;

Dims dims_arg(const benchmark::State& st) { return Dims{static_cast<int>(st.range(0)), static_cast<int>(st.range(1))}; }

void BM_VolumeSerial(benchmark::State& st) {
  const Dims d = dims_arg(st);
  for (auto _ : st) benchmark::DoNotOptimize(reference::estimate_ppt_volume(d, kSamples, 1));
  st.SetItemsProcessed(static_cast<std::int64_t>(st.iterations() * kSamples));
}

void BM_VolumeParallel(benchmark::State& st) {
  const Dims d = dims_arg(st);
  const int workers = static_cast<int>(st.range(2));
  for (auto _ : st) benchmark::DoNotOptimize(experiments::estimate_ppt_volume(d, kSamples, RunOptions{1, workers}));
  st.SetItemsProcessed(static_cast<std::int64_t>(st.iterations() * kSamples));
}

void BM_UpperBoundSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(reference::upper_bound_mc_2x2(16 * kSamples, 1));
  st.SetItemsProcessed(static_cast<std::int64_t>(st.iterations() * 16 * kSamples));
}

void BM_UpperBoundParallel(benchmark::State& st) {
  const int workers = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(bounds::upper_bound_mc_2x2(16 * kSamples, RunOptions{1, workers}));
  st.SetItemsProcessed(static_cast<std::int64_t>(st.iterations() * 16 * kSamples));
}

void BM_Eigvalsh(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  rng::SeededStream s(3, 0);
  const auto rho = rng::sample_density_matrix(Dims{2, n / 2}, s).matrix();
  mat::ComplexMatrix work;
  for (auto _ : st) {
    work = rho;
    benchmark::DoNotOptimize(mat::eigvalsh_unchecked(work));
  }
}

void worker_args(benchmark::internal::Benchmark* b) {
  const int max_workers = omp_get_max_threads();
  for (auto [n1, n2] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 3}})
    for (int w = 1; w <= max_workers; w *= 2) b->Args({n1, n2, w});
}

}  // namespace

BENCHMARK(BM_VolumeSerial)->Args({2, 2})->Args({2, 3})->Args({3, 3})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VolumeParallel)->Apply(worker_args)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_UpperBoundSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_UpperBoundParallel)->RangeMultiplier(2)->Range(1, 8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Eigvalsh)->Arg(4)->Arg(6)->Arg(8)->Arg(12)->Arg(16)->Arg(32);

BENCHMARK_MAIN();
