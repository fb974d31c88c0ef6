#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "nonlocal/kernels.hpp"
#include "nonlocal/linear_solvers.hpp"

using namespace nonlocal;

namespace {

Grid square(std::size_t n) {
  const std::vector<Interval> domain{{0.0, 1.0}, {0.0, 1.0}};
  const std::vector<std::size_t> counts{n, n};
  return Grid::build(domain, counts, 1.0, 1);
}

std::vector<double> noise(std::size_t size, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> v(size);
  for (double& x : v) x = d(rng);
  return v;
}

template <bool Parallel>
void BM_Laplacian(benchmark::State& state) {
  const Grid g = square(static_cast<std::size_t>(state.range(0)));
  const auto in = noise(g.size(), 1);
  std::vector<double> out(g.size());
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::laplacian(g, in, out);
    else
      kernels::serial::laplacian(g, in, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.size()));
}

template <bool Parallel>
void BM_Dot(benchmark::State& state) {
  const auto size = static_cast<std::size_t>(state.range(0));
  const auto a = noise(size, 2), b = noise(size, 3);
  for (auto _ : state) {
    double d = Parallel ? kernels::dot(a, b) : kernels::serial::dot(a, b);
    benchmark::DoNotOptimize(d);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(size));
}

template <bool Parallel>
void BM_Pcg(benchmark::State& state) {
  const Grid g = square(static_cast<std::size_t>(state.range(0)));
  const auto rhs = noise(g.size(), 4);
  const std::vector<double> coeff(g.size(), 1.0);
  std::vector<double> x(g.size());
  const ExecutionMode mode = Parallel ? ExecutionMode::parallel : ExecutionMode::serial;
  for (auto _ : state) {
    std::fill(x.begin(), x.end(), 0.0);
    const auto stats = pcg_solve(g, coeff, 1e-3, rhs, x, 1e-10, mode);
    benchmark::DoNotOptimize(stats.iterations);
  }
}

}  // namespace

BENCHMARK(BM_Laplacian<false>)->Name("laplacian/serial")->Arg(127)->Arg(511)->Arg(1023);
BENCHMARK(BM_Laplacian<true>)->Name("laplacian/openmp")->Arg(127)->Arg(511)->Arg(1023);
BENCHMARK(BM_Dot<false>)->Name("dot/serial")->Arg(1 << 14)->Arg(1 << 20);
BENCHMARK(BM_Dot<true>)->Name("dot/openmp")->Arg(1 << 14)->Arg(1 << 20);
BENCHMARK(BM_Pcg<false>)->Name("pcg2d/serial")->Arg(127)->Arg(255)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Pcg<true>)->Name("pcg2d/openmp")->Arg(127)->Arg(255)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
