#include "heunqes/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "heunqes/error.hpp"

namespace heunqes::kernels {

std::size_t sturm_count(const TridiagonalView& m, double x) {
  const auto& d = m.diagonal;
  const auto& e = m.off_diagonal;
  const double tiny = std::numeric_limits<double>::min();
  std::size_t negatives = 0;
  double q = d[0] - x;
  for (std::size_t i = 0;;) {
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++negatives;
    if (++i == d.size()) break;
    q = d[i] - x - e[i - 1] * e[i - 1] / q;
  }
  return negatives;
}

std::pair<double, double> gershgorin_bounds(const TridiagonalView& m) {
  const auto& d = m.diagonal;
  const auto& e = m.off_diagonal;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < d.size(); ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(e[i - 1]);
    if (i + 1 < d.size()) radius += std::abs(e[i]);
    lo = std::min(lo, d[i] - radius);
    hi = std::max(hi, d[i] + radius);
  }
  return {lo, hi};
}

namespace {

void check_matrix(const TridiagonalView& m, std::size_t count) {
  if (m.diagonal.empty() || m.off_diagonal.size() + 1 != m.diagonal.size())
    throw Error(Errc::InvalidGrid, "malformed tridiagonal matrix");
  if (count == 0 || count > m.diagonal.size())
    throw Error(Errc::InvalidGrid, "requested eigenvalue count out of range");
  for (double v : m.diagonal)
    if (!std::isfinite(v)) throw Error(Errc::ConvergenceFailure, "non-finite matrix entry");
  for (double v : m.off_diagonal)
    if (!std::isfinite(v)) throw Error(Errc::ConvergenceFailure, "non-finite matrix entry");
}

// k-th smallest eigenvalue (0-based) by bisection on the Sturm count.
double kth_eigenvalue(const TridiagonalView& m, std::size_t k, double lo, double hi,
                      const EigenOptions& options) {
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double width = hi - lo;
    if (width <= options.relative_tolerance * std::max(std::abs(lo), std::abs(hi)) ||
        mid <= lo || mid >= hi)
      return mid;
    if (sturm_count(m, mid) > k)
      hi = mid;
    else
      lo = mid;
  }
  throw Error(Errc::ConvergenceFailure,
              "eigenvalue bisection did not converge for index " + std::to_string(k));
}

}  // namespace

namespace serial {

std::vector<double> lowest_eigenvalues(const TridiagonalView& m, std::size_t count,
                                       const EigenOptions& options) {
  check_matrix(m, count);
  const auto [lo, hi] = gershgorin_bounds(m);
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) out[k] = kth_eigenvalue(m, k, lo, hi, options);
  return out;
}

double simpson(std::span<const double> samples, double step) {
  const std::size_t n = samples.size();
  if (n < 3 || n % 2 == 0) return std::numeric_limits<double>::quiet_NaN();
  double odd = 0.0;
  double even = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) (i % 2 ? odd : even) += samples[i];
  return step / 3.0 * (samples.front() + samples.back() + 4.0 * odd + 2.0 * even);
}

}  // namespace serial

namespace omp {

std::vector<double> lowest_eigenvalues(const TridiagonalView& m, std::size_t count,
                                       const EigenOptions& options) {
  check_matrix(m, count);
  const auto [lo, hi] = gershgorin_bounds(m);
  std::vector<double> out(count);
  // Each index is bracketed independently, so the loop has no carried state.
  // Exceptions cannot cross the parallel region; collect a flag instead.
  bool failed = false;
  const auto n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic) reduction(|| : failed)
  for (long k = 0; k < n; ++k) {
    try {
      out[k] = kth_eigenvalue(m, static_cast<std::size_t>(k), lo, hi, options);
    } catch (const Error&) {
      failed = true;
    }
  }
  if (failed) throw Error(Errc::ConvergenceFailure, "eigenvalue bisection did not converge");
  return out;
}

double simpson(std::span<const double> samples, double step) {
  const auto n = static_cast<long>(samples.size());
  if (n < 3 || n % 2 == 0) return std::numeric_limits<double>::quiet_NaN();
  double interior = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : interior)
  for (long i = 1; i < n - 1; ++i) interior += (i % 2 ? 4.0 : 2.0) * samples[i];
  return step / 3.0 * (samples.front() + samples.back() + interior);
}

}  // namespace omp

}  // namespace heunqes::kernels
