// Serial reference vs OpenMP kernels. Arg is the grid side, so n = side^2.
// Thread count comes from OMP_NUM_THREADS.
#include "walklap/walklap.hpp"

#include <benchmark/benchmark.h>
#include <omp.h>

using namespace walklap;

namespace {

Graph bench_graph(benchmark::State& state) { return gen::grid(state.range(0), state.range(0)); }

template <auto Kernel>
void spmv_like(benchmark::State& state) {
  const Graph g = bench_graph(state);
  const Vector x = gaussian_probes(g.num_nodes(), 1, 1).col(0);
  Vector y;
  for (auto _ : state) {
    Kernel(g, x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * g.num_nodes());
  state.counters["threads"] = omp_get_max_threads();
}

template <auto Kernel>
void z_like(benchmark::State& state) {
  const Graph g = bench_graph(state);
  const Vector x = gaussian_probes(2 * g.num_nodes(), 1, 1).col(0);
  Vector y;
  for (auto _ : state) {
    Kernel(g, 0.5, x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * g.num_nodes());
}

template <auto Kernel>
void spmm_like(benchmark::State& state) {
  const Graph g = bench_graph(state);
  const Matrix x = gaussian_probes(g.num_nodes(), 8, 1);
  Matrix y;
  for (auto _ : state) {
    Kernel(g, x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * g.num_nodes() * 8);
}

template <auto Kernel>
void csr_like(benchmark::State& state) {
  const Graph g = bench_graph(state);
  const SparseMatrix a = deformed_laplacian(g, 0.2, 1.0);
  const Vector x = gaussian_probes(g.num_nodes(), 1, 1).col(0);
  Vector y;
  for (auto _ : state) {
    Kernel(a, x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * g.num_nodes());
}

void materialize_serial(benchmark::State& state) {
  const auto op = LaplacianOperator::btdw(bench_graph(state), 0.5, CoefficientFunction::exponential());
  for (auto _ : state) benchmark::DoNotOptimize(op.materialize_serial().data());
}

void materialize_parallel(benchmark::State& state) {
  const auto op = LaplacianOperator::btdw(bench_graph(state), 0.5, CoefficientFunction::exponential());
  for (auto _ : state) benchmark::DoNotOptimize(op.materialize().data());
}

// Time loop of the stochastic return-probability estimator; the per-time
// evaluations are the parallel part.
void return_probability_times(benchmark::State& state) {
  const auto op = standard_operator(bench_graph(state));
  const Vector times = time_grid(10.0, 30);
  for (auto _ : state) benchmark::DoNotOptimize(xnystrace_exp(op, times).values.data());
}

}  // namespace

BENCHMARK(spmv_like<serial::spmv>)->Name("spmv/serial")->Arg(100)->Arg(300)->Arg(1000);
BENCHMARK(spmv_like<kernels::spmv>)->Name("spmv/omp")->Arg(100)->Arg(300)->Arg(1000);
BENCHMARK(spmv_like<serial::laplacian_apply>)->Name("laplacian/serial")->Arg(300)->Arg(1000);
BENCHMARK(spmv_like<kernels::laplacian_apply>)->Name("laplacian/omp")->Arg(300)->Arg(1000);
BENCHMARK(z_like<serial::z_apply>)->Name("z_apply/serial")->Arg(300)->Arg(1000);
BENCHMARK(z_like<kernels::z_apply>)->Name("z_apply/omp")->Arg(300)->Arg(1000);
BENCHMARK(spmm_like<serial::spmm>)->Name("spmm8/serial")->Arg(300)->Arg(1000);
BENCHMARK(spmm_like<kernels::spmm>)->Name("spmm8/omp")->Arg(300)->Arg(1000);
BENCHMARK(csr_like<serial::csr_apply>)->Name("csr_apply/serial")->Arg(300)->Arg(1000);
BENCHMARK(csr_like<kernels::csr_apply>)->Name("csr_apply/omp")->Arg(300)->Arg(1000);
BENCHMARK(materialize_serial)->Name("materialize/serial")->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(materialize_parallel)->Name("materialize/omp")->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(return_probability_times)->Name("xnystrace_times")->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
