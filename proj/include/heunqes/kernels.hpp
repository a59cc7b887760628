#pragma once

// Data-parallel kernels.  Every kernel has a serial reference in
// heunqes::kernels::serial and an OpenMP version in heunqes::kernels::omp;
// the two must agree to rounding (tests/test_kernels.cpp) and are compared
// for speed in bench/bench_kernels.cpp.

#include <cstddef>
#include <span>
#include <vector>

namespace heunqes::kernels {

// Symmetric tridiagonal matrix: diagonal d_0..d_{N-1} and off-diagonal
// e_0..e_{N-2} (e_i couples i and i+1).
struct TridiagonalView {
  std::span<const double> diagonal;
  std::span<const double> off_diagonal;
};

// Number of eigenvalues strictly below x (Sturm sequence via LDL^T pivots).
std::size_t sturm_count(const TridiagonalView& m, double x);

// Gershgorin interval [lo, hi] containing the whole spectrum.
std::pair<double, double> gershgorin_bounds(const TridiagonalView& m);

struct EigenOptions {
  double relative_tolerance = 1e-14;
  int max_iterations = 300;
};

namespace serial {

std::vector<double> lowest_eigenvalues(const TridiagonalView& m, std::size_t count,
                                       const EigenOptions& options = {});

template <typename F>
void evaluate_grid(F&& f, std::span<const double> x, std::span<double> out) {
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = f(x[i]);
}

// Composite Simpson rule on equally spaced samples (odd count).
double simpson(std::span<const double> samples, double step);

}  // namespace serial

namespace omp {

std::vector<double> lowest_eigenvalues(const TridiagonalView& m, std::size_t count,
                                       const EigenOptions& options = {});

template <typename F>
void evaluate_grid(F&& f, std::span<const double> x, std::span<double> out) {
  const auto n = static_cast<long>(x.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[i] = f(x[i]);
}

double simpson(std::span<const double> samples, double step);

}  // namespace omp

}  // namespace heunqes::kernels
