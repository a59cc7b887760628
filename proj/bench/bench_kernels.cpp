// Serial reference vs OpenMP kernels on oracle-sized problems.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "heunqes/kernels.hpp"

namespace kn = heunqes::kernels;

namespace {

// Oscillator-like operator: -d2/drho2 + (l^2 - 1/4)/rho^2 + rho^2 on a uniform grid.
struct Operator {
  std::vector<double> d, e;
  explicit Operator(std::size_t n) : d(n), e(n - 1) {
    const double h = 12.0 / static_cast<double>(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
      const double r = static_cast<double>(i + 1) * h;
      d[i] = 2.0 / (h * h) + 0.75 / (r * r) + r * r;
    }
    for (auto& x : e) x = -1.0 / (h * h);
  }
  kn::TridiagonalView view() const { return {d, e}; }
};

std::vector<double> samples(std::size_t n) {
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = std::exp(-1e-4 * static_cast<double>(i));
  return y;
}

double envelope(double x) { return std::pow(x, 2.5) * std::exp(-x * x) * std::cos(x); }

template <auto Eigen>
void BM_eigenvalues(benchmark::State& state) {
  const Operator op(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Eigen(op.view(), 4, kn::EigenOptions{}));
}

template <auto Simpson>
void BM_simpson(benchmark::State& state) {
  const auto y = samples(static_cast<std::size_t>(state.range(0)) | 1u);
  for (auto _ : state) benchmark::DoNotOptimize(Simpson(y, 1e-3));
}

template <bool Parallel>
void BM_grid(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> x(n), out(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = 1e-3 * static_cast<double>(i);
  for (auto _ : state) {
    if constexpr (Parallel)
      kn::omp::evaluate_grid(envelope, x, out);
    else
      kn::serial::evaluate_grid(envelope, x, out);
    benchmark::DoNotOptimize(out.data());
  }
}

}  // namespace

BENCHMARK(BM_eigenvalues<kn::serial::lowest_eigenvalues>)->Name("eigen/serial")->Arg(4000)->Arg(8000);
BENCHMARK(BM_eigenvalues<kn::omp::lowest_eigenvalues>)->Name("eigen/omp")->Arg(4000)->Arg(8000);
BENCHMARK(BM_simpson<kn::serial::simpson>)->Name("simpson/serial")->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_simpson<kn::omp::simpson>)->Name("simpson/omp")->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_grid<false>)->Name("grid/serial")->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_grid<true>)->Name("grid/omp")->Arg(1 << 16)->Arg(1 << 20);

BENCHMARK_MAIN();
