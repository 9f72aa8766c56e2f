// Serial reference vs OpenMP kernels. Each benchmark takes the execution mode
// as its first argument (0 = serial, 1 = parallel).

#include <benchmark/benchmark.h>

#include "tfd/datagen.hpp"
#include "tfd/tensor_ops.hpp"
#include "tfd/tfd_stream.hpp"
#include "tfd/tsvd.hpp"

namespace {

using namespace tfd;

Exec mode(const benchmark::State& state) { return state.range(0) == 0 ? Exec::serial : Exec::parallel; }

DenseTensor random_tensor(std::vector<Index> dims, std::uint64_t seed) {
  DenseTensor t(std::move(dims));
  Rng rng(seed);
  for (double& v : t.data()) v = rng.normal();
  return t;
}

void BM_FftModes(benchmark::State& state) {
  const auto n3 = static_cast<Index>(state.range(1));
  const DenseTensor a = random_tensor({200, 40, n3}, 1);
  for (auto _ : state) benchmark::DoNotOptimize(fft_modes(a, mode(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(a.size()));
}
BENCHMARK(BM_FftModes)->ArgsProduct({{0, 1}, {16, 20}});

void BM_TProduct(benchmark::State& state) {
  const auto n = static_cast<Index>(state.range(1));
  const DenseTensor a = random_tensor({n, n, 16}, 2);
  const DenseTensor b = random_tensor({n, n, 16}, 3);
  for (auto _ : state) benchmark::DoNotOptimize(t_product(a, b, mode(state)));
}
BENCHMARK(BM_TProduct)->ArgsProduct({{0, 1}, {32, 96}});

void BM_TSvd(benchmark::State& state) {
  const DenseTensor a = random_tensor({60, 40, 12}, 4);
  for (auto _ : state) benchmark::DoNotOptimize(t_svd(a, mode(state)));
}
BENCHMARK(BM_TSvd)->Arg(0)->Arg(1);

void BM_TfdStream(benchmark::State& state) {
  SyntheticSpec spec;
  spec.dims = {static_cast<Index>(state.range(1)), 40, 8};
  spec.k = 5;
  spec.seed = RandomSeed{5};
  const DenseTensor a = gen_synthetic(spec).data;
  for (auto _ : state) benchmark::DoNotOptimize(tfd_stream(a, 10, mode(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(a.n1()));
}
BENCHMARK(BM_TfdStream)->ArgsProduct({{0, 1}, {1000, 4000}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
