// Blocked OpenMP kernels against their serial reference loops.

#include <benchmark/benchmark.h>

#include <random>

#include "giant/comms.hpp"
#include "giant/data_io.hpp"
#include "giant/driver.hpp"
#include "giant/kernels.hpp"
#include "giant/synthetic.hpp"

namespace {

giant::DenseMatrix random_matrix(std::size_t rows, std::size_t cols) {
  std::mt19937_64 rng(rows * 31 + cols);
  std::normal_distribution<double> normal;
  giant::DenseMatrix a(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = normal(rng);
  return a;
}

template <giant::Vec (*Kernel)(const giant::DenseMatrix&, std::span<const double>)>
void BM_matvec(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto d = static_cast<std::size_t>(state.range(1));
  const giant::DenseMatrix a = random_matrix(n, d);
  const giant::Vec v(d, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(a, v));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * d));
}

template <giant::Vec (*Kernel)(const giant::DenseMatrix&, std::span<const double>)>
void BM_matvec_transposed(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto d = static_cast<std::size_t>(state.range(1));
  const giant::DenseMatrix a = random_matrix(n, d);
  const giant::Vec u(n, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(a, u));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * d));
}

template <giant::DenseMatrix (*Kernel)(const giant::DenseMatrix&)>
void BM_gram(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto d = static_cast<std::size_t>(state.range(1));
  const giant::DenseMatrix a = random_matrix(n, d);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(a));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * d * d));
}

void sizes(benchmark::internal::Benchmark* b) {
  for (long n : {4096L, 65536L})
    for (long d : {32L, 256L}) b->Args({n, d});
}

void BM_giant_iteration(benchmark::State& state) {
  const auto mode = state.range(0) == 0 ? giant::ExecutionMode::sequential : giant::ExecutionMode::parallel;
  giant::GeneratorSpec g;
  g.n = 16384;
  g.d = 64;
  const giant::LabeledDataset data = giant::generate_synthetic(g, 1);
  const giant::ObjectiveSpec spec{giant::LossKind::quadratic, giant::Regularizer::scaled_identity(g.gamma)};
  const std::vector<giant::WorkerShard> shards = giant::partition_shards(data, 8, 2);
  giant::GiantConfig c;
  c.max_iterations = 1;
  c.stop_tol = 0.0;
  const giant::Vec w0(g.d, 0.0);
  for (auto _ : state) {
    giant::Fabric fabric(8, mode);
    benchmark::DoNotOptimize(giant::run_giant(spec, data, shards, fabric, c, w0));
  }
}

}  // namespace

BENCHMARK(BM_matvec<giant::kernels::serial::matvec>)->Name("matvec/serial")->Apply(sizes);
BENCHMARK(BM_matvec<giant::kernels::matvec>)->Name("matvec/parallel")->Apply(sizes);
BENCHMARK(BM_matvec_transposed<giant::kernels::serial::matvec_transposed>)->Name("matvec_t/serial")->Apply(sizes);
BENCHMARK(BM_matvec_transposed<giant::kernels::matvec_transposed>)->Name("matvec_t/parallel")->Apply(sizes);
BENCHMARK(BM_matvec<giant::kernels::serial::gram_apply>)->Name("gram_apply/serial")->Apply(sizes);
BENCHMARK(BM_matvec<giant::kernels::gram_apply>)->Name("gram_apply/parallel")->Apply(sizes);
BENCHMARK(BM_gram<giant::kernels::serial::gram>)->Name("gram/serial")->Args({4096, 32})->Args({16384, 64});
BENCHMARK(BM_gram<giant::kernels::gram>)->Name("gram/parallel")->Args({4096, 32})->Args({16384, 64});
BENCHMARK(BM_giant_iteration)->Name("giant_iteration/sequential_fabric")->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_giant_iteration)->Name("giant_iteration/parallel_fabric")->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
